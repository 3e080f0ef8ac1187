r"""Real-order special functions: :math:`\Gamma(x)`, :math:`J_\nu(x)` and
the MacDonald function :math:`K_\nu(x)`.

Only real orders of modest size are needed (:math:`|\nu| \le 3`), so the
Bessel routines use compact two-regime algorithms rather than general
purpose machinery:

* :math:`K_\nu` -- Temme's series for :math:`x \le 2`, Steed's continued
  fraction (CF2) above, both for a reduced order :math:`|\mu| \le 1/2`,
  followed by upward recurrence, which is stable for :math:`K`.
* :math:`J_\nu` -- ascending power series for :math:`x \le 25` with the
  rational inner sum carried in 40-digit decimal arithmetic, Hankel's
  asymptotic expansion above.

All functions are pure.
"""

import math
from decimal import Decimal, localcontext

from .errors import DomainError

__all__ = ["gamma_fn", "bessel_j", "bessel_k", "bessel_k_derivative", "bessel_j_derivative"]

_EPS = 1e-16
_MAX_ORDER = 3.0

# Taylor coefficients of 1/Gamma(1+z) about z = 0.
_RGAMMA1 = (
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
)

_J_SERIES_MAX_X = 25.0


def _check_arg(x):
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"argument must be finite and positive, got {x!r}")


def _check_order(nu):
    if not math.isfinite(nu):
        raise DomainError(f"order must be finite, got {nu!r}")


def gamma_fn(x):
    """Gamma function for positive real arguments.

    Thin guard around :func:`math.gamma`, which is accurate to a few ulp on
    the range used here.
    """
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"gamma_fn requires finite x > 0, got {x!r}")
    return math.gamma(x)


def _temme_gammas(mu):
    """Return ``(gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu))`` for |mu| <= 1/2.

    ``gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)`` is formed from the odd
    Taylor coefficients directly, so there is no cancellation at small mu.
    """
    mu2 = mu * mu
    gam1 = 0.0
    gam2 = 0.0
    p = 1.0
    for j in range(0, len(_RGAMMA1) - 1, 2):
        gam2 += _RGAMMA1[j] * p
        gam1 -= _RGAMMA1[j + 1] * p
        p *= mu2
    return gam1, gam2, gam2 - mu * gam1, gam2 + mu * gam1


def _k_temme(mu, x):
    """K_mu(x), K_{mu+1}(x) by Temme's series; |mu| <= 1/2, 0 < x <= 2."""
    x2 = 0.5 * x
    pimu = math.pi * mu
    fact = 1.0 + pimu * pimu / 6.0 if abs(pimu) < 1e-8 else pimu / math.sin(pimu)
    d = -math.log(x2)
    e = mu * d
    fact2 = 1.0 + e * e / 6.0 if abs(e) < 1e-8 else math.sinh(e) / e
    gam1, gam2, gampl, gammi = _temme_gammas(mu)
    ff = fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
    total = ff
    e = math.exp(e)
    p = 0.5 * e / gampl
    q = 0.5 / (e * gammi)
    c = 1.0
    d = x2 * x2
    total1 = p
    mu2 = mu * mu
    for i in range(1, 10000):
        ff = (i * ff + p + q) / (i * i - mu2)
        c *= d / i
        p /= i - mu
        q /= i + mu
        delta = c * ff
        total += delta
        total1 += c * (p - i * ff)
        if abs(delta) < abs(total) * _EPS:
            break
    else:  # pragma: no cover
        raise ArithmeticError("Temme series did not converge")
    return total, total1 * 2.0 / x


def _k_steed(mu, x):
    """K_mu(x), K_{mu+1}(x) by Steed's CF2; |mu| <= 1/2, x > 2."""
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25 - mu * mu
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(1, 100000):
        a -= 2 * i
        c = -a * c / (i + 1.0)
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < _EPS:
            break
    else:  # pragma: no cover
        raise ArithmeticError("Steed continued fraction did not converge")
    h *= a1
    kmu = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) / s
    return kmu, kmu * (mu + x + 0.5 - h) / x


def _kv(nu, x):
    # K_nu = K_{-nu}: work with |nu| so the symmetry holds bit for bit.
    nu = abs(nu)
    n = int(math.floor(nu + 0.5))
    mu = nu - n
    k0, k1 = _k_temme(mu, x) if x <= 2.0 else _k_steed(mu, x)
    order = mu + 1.0
    for _ in range(n):
        k0, k1 = k1, 2.0 * order / x * k1 + k0
        order += 1.0
    if not math.isfinite(k0):
        raise OverflowError(f"K_{nu}({x}) exceeds the double range")
    return k0


def bessel_k(nu, x):
    r"""MacDonald function :math:`K_\nu(x)` for real order and ``x > 0``.

    Parameters
    ----------
    nu : float
        Real order with ``|nu| <= 3``.
    x : float
        Positive argument.

    Raises
    ------
    DomainError
        For ``x <= 0``, non-finite input or ``|nu| > 3``.
    OverflowError
        When the result is too large for a double (tiny ``x``).
    """
    _check_order(nu)
    _check_arg(x)
    if abs(nu) > _MAX_ORDER:
        raise DomainError(f"|nu| <= {_MAX_ORDER} required, got {nu!r}")
    return _kv(nu, x)


def bessel_k_derivative(nu, x):
    """dK_nu/dx via ``K'_nu = -(K_{nu-1} + K_{nu+1}) / 2``."""
    _check_order(nu)
    _check_arg(x)
    if abs(nu) > _MAX_ORDER:
        raise DomainError(f"|nu| <= {_MAX_ORDER} required, got {nu!r}")
    return -0.5 * (_kv(nu - 1.0, x) + _kv(nu + 1.0, x))


def _j_series(nu, x):
    # J_nu(x) = (x/2)^nu / Gamma(nu+1) * sum_k (-x^2/4)^k / (k! (nu+1)_k).
    # The inner sum alternates with terms up to ~e^x; 40 digits cover x <= 25.
    with localcontext() as ctx:
        ctx.prec = 40
        z = -(Decimal(x) * Decimal(x)) / 4
        a = Decimal(nu) + 1
        term = Decimal(1)
        total = Decimal(1)
        tiny = Decimal(10) ** -36
        k = 0
        while True:
            k += 1
            term = term * z / (k * (a + k - 1))
            total += term
            if abs(term) < tiny * abs(total) and k > x:
                break
        inner = float(total)
    return (0.5 * x) ** nu / math.gamma(nu + 1.0) * inner


def _j_hankel(nu, x):
    four_nu2 = 4.0 * nu * nu
    p_sum, q_sum = 1.0, 0.0
    term = 1.0
    last = math.inf
    for k in range(1, 200):
        term *= (four_nu2 - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if abs(term) > last:
            break
        last = abs(term)
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2:
            q_sum += sign * term
        else:
            p_sum += sign * term
        if last < 1e-17:
            break
    phase = 0.5 * math.pi * nu + 0.25 * math.pi
    cos_w = math.cos(x) * math.cos(phase) + math.sin(x) * math.sin(phase)
    sin_w = math.sin(x) * math.cos(phase) - math.cos(x) * math.sin(phase)
    return math.sqrt(2.0 / (math.pi * x)) * (p_sum * cos_w - q_sum * sin_w)


def _jv(nu, x):
    if nu < 0.0 and nu == math.floor(nu):
        n = int(-nu)
        return (-1.0) ** n * _jv(float(n), x)
    if x <= _J_SERIES_MAX_X:
        return _j_series(nu, x)
    return _j_hankel(nu, x)


def bessel_j(nu, x):
    r"""Regular Bessel function :math:`J_\nu(x)` for ``nu >= -1``, ``x > 0``."""
    _check_order(nu)
    _check_arg(x)
    if nu < -1.0:
        raise DomainError(f"bessel_j requires nu >= -1, got {nu!r}")
    return _jv(nu, x)


def bessel_j_derivative(nu, x):
    """dJ_nu/dx via ``J'_nu = (J_{nu-1} - J_{nu+1}) / 2``; needs ``nu >= 0``."""
    _check_order(nu)
    _check_arg(x)
    if nu < 0.0:
        raise DomainError(f"bessel_j_derivative requires nu >= 0, got {nu!r}")
    return 0.5 * (_jv(nu - 1.0, x) - _jv(nu + 1.0, x))
