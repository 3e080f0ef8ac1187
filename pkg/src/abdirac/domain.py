"""Physical parameter space: flux decomposition, spin sector, singular
channel and the extension-angle maps.

Conventions: charge e > 0, angles in radians, the open endpoints 0 and 2*pi
of every extension angle are excluded.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, IntegerFluxError
from .specfun import gamma_fn

INTEGER_FLUX_TOL = 1e-12
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class FluxDecomposition:
    """mu = n + gamma with n = floor(mu) and 0 < gamma < 1."""

    mu: float
    n: int
    gamma: float


@dataclass(frozen=True)
class SpinSector:
    s: int

    def __post_init__(self):
        if self.s not in (1, -1):
            raise DomainError(f"spin sector must be +1 or -1, got {self.s!r}")


@dataclass(frozen=True)
class ChannelIndex:
    """Orbital number l and total angular momentum j = l + s/2."""

    l: int
    s: int
    j: Fraction = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "j", Fraction(self.l) + Fraction(self.s, 2))


@dataclass(frozen=True)
class ExtensionAngle:
    """Extension parameter theta and its image theta_star at a given gamma."""

    theta: float
    theta_star: float
    gamma: float


def _spin(s):
    return s.s if isinstance(s, SpinSector) else SpinSector(int(s)).s


def _check_gamma(gamma):
    if not (0.0 < gamma < 1.0):
        raise DomainError(f"gamma must lie in (0, 1), got {gamma!r}")


def _check_angle(name, value):
    if not (0.0 < value < TWO_PI):
        raise DomainError(f"{name} must lie in (0, 2*pi), got {value!r}")


def decompose_flux(mu):
    """Split the flux parameter into integer and fractional parts."""
    if not math.isfinite(mu):
        raise DomainError(f"mu must be finite, got {mu!r}")
    if abs(mu - round(mu)) <= INTEGER_FLUX_TOL:
        raise IntegerFluxError(f"mu = {mu!r} is integral; the singular sector needs fractional flux")
    n = math.floor(mu)
    return FluxDecomposition(mu=mu, n=int(n), gamma=mu - n)


def singular_channel(n, s=1):
    """Channel l = -n - 1 that carries the singular square-integrable solutions."""
    if n < 0:
        raise DomainError(f"singular channel needs n >= 0, got {n!r}")
    return ChannelIndex(l=-int(n) - 1, s=_spin(s))


def is_attractive_sector(mu, s):
    """True when the point spin interaction at the flux line is attractive."""
    s = _spin(s)
    return (mu > 0 and s == 1) or (mu < 0 and s == -1)


def bound_state_channel(gamma, s, n=0):
    """(l, mu) in which the bound spinor of sector ``s`` solves the radial system.

    For s = +1 this is mu = n + gamma, l = -n - 1 (so l + mu = gamma - 1).  The
    s = -1 sector is its image under e -> -e, s -> -s: mu = -(n + gamma),
    l = n + 1, giving l + mu = 1 - gamma.
    """
    _check_gamma(gamma)
    if _spin(s) == 1:
        return -n - 1, n + gamma
    return n + 1, -(n + gamma)


def _half_tan(theta):
    return math.tan(0.5 * theta)


def _from_half_tan(t, reference):
    """Angle in (0, 2*pi) with tan(angle/2) = t, on the same side of pi as reference."""
    if reference == math.pi:
        return math.pi
    half = math.atan(t)
    if reference > math.pi:
        half += math.pi
    return 2.0 * half


def connection_factor(gamma):
    """Gamma(1 - gamma) / (2 Gamma(gamma)), the slope of the theta -> theta* map."""
    _check_gamma(gamma)
    return gamma_fn(1.0 - gamma) / (2.0 * gamma_fn(gamma))


def map_theta(theta, gamma):
    """theta -> theta* with tan(theta*/2) = Gamma(1-gamma)/(2 Gamma(gamma)) tan(theta/2).

    The branch keeps theta* on the same side of pi as theta; theta = pi is a
    fixed point.
    """
    _check_angle("theta", theta)
    c = connection_factor(gamma)
    theta_star = _from_half_tan(c * _half_tan(theta), theta)
    return ExtensionAngle(theta=theta, theta_star=theta_star, gamma=gamma)


def unmap_theta(theta_star, gamma):
    """Inverse of :func:`map_theta`."""
    _check_angle("theta_star", theta_star)
    c = connection_factor(gamma)
    theta = _from_half_tan(_half_tan(theta_star) / c, theta_star)
    return ExtensionAngle(theta=theta, theta_star=theta_star, gamma=gamma)


def small_r_ratio(gamma):
    r"""2^{1-2 gamma} Gamma(1-gamma) / Gamma(gamma).

    Ratio of the leading small-argument coefficients of K_{1-gamma} and K_gamma,
    from :math:`K_\nu(z) \simeq 2^{\nu-1}\Gamma(\nu) z^{-\nu}`.
    """
    _check_gamma(gamma)
    return 2.0 ** (1.0 - 2.0 * gamma) * gamma_fn(1.0 - gamma) / gamma_fn(gamma)


def domain_theta_star(theta, gamma):
    """theta* of the boundary condition obeyed by the extension spinor at theta.

    Read off from the small-r limit of (K_{gamma-1} cos(theta/2), -s K_gamma sin(theta/2))
    matched against ((mr)^{gamma-1} sin(theta*/2), -s (mr)^{-gamma} cos(theta*/2)):
    cot(theta*/2) = tan(theta/2) / small_r_ratio(gamma).  The map is decreasing,
    sends (pi, 2*pi) onto (pi, 2*pi) and (0, pi) onto (0, pi).
    """
    _check_angle("theta", theta)
    if theta == math.pi:
        raise DomainError("theta = pi gives a pure lower component; theta* is 0 mod 2*pi")
    c = small_r_ratio(gamma)
    return math.pi - 2.0 * math.atan(_half_tan(theta) / c)


def domain_theta(theta_star, gamma):
    """Inverse of :func:`domain_theta_star`: the extension parameter for a given theta*."""
    _check_angle("theta_star", theta_star)
    if theta_star == math.pi:
        raise DomainError("theta* = pi corresponds to theta = 0 mod 2*pi")
    c = small_r_ratio(gamma)
    half = math.atan(c * math.tan(0.5 * (math.pi - theta_star)))
    theta = 2.0 * half
    return theta + TWO_PI if theta < 0.0 else theta
