"""Closed-form radial spinors and the operations defined on them.

Every spinor of the construction has components that are a single Bessel
function each, ``coef * Z_order(wavenumber * r)`` with Z = J or K, so a
spinor is stored as two :class:`BesselTerm` objects plus metadata.  Radial
profiles are kept real; complex factors that are constant in r (for
example the -+i of the deficiency lower component) live in ``phases``.
"""

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import integrate

from . import specfun
from .domain import _spin, domain_theta_star, map_theta
from .errors import DomainError, NotNormalizableError
from .spectrum import BoundState, Branch

__all__ = [
    "Kind",
    "BesselTerm",
    "RadialSpinor",
    "scattering_spinor",
    "deficiency_spinor",
    "extension_spinor",
    "bound_spinor",
    "zero_mode",
    "normalize",
    "norm_squared",
    "boundary_form",
    "boundary_form_sequence",
    "small_r_ratio_of",
    "ZERO_MODE_NORM",
]

ZERO_MODE_NORM = math.sqrt(2.0 / math.pi)  # times m
_QUAD_RTOL = 1e-13


class Kind(enum.Enum):
    SCATTERING = "scattering"
    DEFICIENCY = "deficiency"
    EXTENSION_DOMAIN = "extension_domain"
    BOUND = "bound"
    ZERO_MODE_PARTICLE = "zero_mode_particle"
    ZERO_MODE_ANTIPARTICLE = "zero_mode_antiparticle"


@dataclass(frozen=True)
class BesselTerm:
    """``coef * Z_order(wavenumber * r)`` with family Z in {"J", "K"}."""

    coef: float
    order: float
    wavenumber: float
    family: str = "K"

    def __call__(self, r):
        if self.coef == 0.0:
            return 0.0
        z = self.wavenumber * r
        if self.family == "K":
            return self.coef * specfun.bessel_k(self.order, z)
        return self.coef * specfun.bessel_j(self.order, z)

    def derivative(self, r):
        if self.coef == 0.0:
            return 0.0
        z = self.wavenumber * r
        if self.family == "K":
            d = specfun.bessel_k_derivative(self.order, z)
        else:
            d = specfun.bessel_j_derivative(self.order, z)
        return self.coef * self.wavenumber * d

    def small_r_leading(self):
        """(A, p) with term ~ A r^p as r -> 0 (K family, nonzero order)."""
        nu = abs(self.order)
        if self.family != "K" or nu == 0.0:
            raise DomainError("leading small-r power only defined for K terms of nonzero order")
        amp = 0.5 * specfun.gamma_fn(nu) * (0.5 * self.wavenumber) ** (-nu)
        return self.coef * amp, -nu

    def scaled(self, factor):
        return replace(self, coef=self.coef * factor)


@dataclass(frozen=True)
class RadialSpinor:
    """Two-component radial function (f1, f2) of r > 0."""

    kind: Kind
    upper: BesselTerm
    lower: BesselTerm
    s: int
    mass: float
    energy: complex | float | None = None
    gamma: float | None = None
    theta: float | None = None
    theta_star: float | None = None
    branch: Branch | None = None
    phases: tuple = (1.0, 1.0)
    scale: float = 1.0
    params: dict = field(default_factory=dict, compare=False)

    def __call__(self, r):
        return self.scale * self.upper(r), self.scale * self.lower(r)

    def derivative(self, r):
        return self.scale * self.upper.derivative(r), self.scale * self.lower.derivative(r)

    def complex_values(self, r):
        f1, f2 = self(r)
        return self.phases[0] * f1, self.phases[1] * f2

    def sample(self, radii):
        radii = np.asarray(radii, dtype=float)
        vals = np.array([self(r) for r in radii], dtype=float).reshape(-1, 2)
        return vals[:, 0], vals[:, 1]

    @property
    def square_integrable(self):
        if self.kind is Kind.SCATTERING:
            return False
        return all(abs(t.order) < 1.0 or t.coef == 0.0 for t in (self.upper, self.lower))

    @property
    def decay(self):
        return min(t.wavenumber for t in (self.upper, self.lower))


def _check_gamma(gamma):
    if not (0.0 < gamma < 1.0):
        raise DomainError(f"gamma must lie in (0, 1), got {gamma!r}")


def _check_mass(m):
    if not (m > 0.0 and math.isfinite(m)):
        raise DomainError(f"mass must be positive, got {m!r}")


def scattering_spinor(E, l, mu, s, m=1.0):
    """Regular continuum solution for E^2 > m^2 (unnormalized).

    For l + mu > 0 the components are sqrt(E+m) J_nu(pr) and sqrt(E-m) J_{nu+s}(pr)
    with nu = l + mu.  For l + mu < 0 the lower component becomes
    -sqrt(E-m) J_{nu-s}(pr), nu = |l + mu|, which is what the radial system
    requires in that case.  For E < -m the common factor i is dropped.
    """
    s = _spin(s)
    _check_mass(m)
    if E * E <= m * m:
        raise DomainError(f"scattering states need E^2 > m^2, got E={E!r}, m={m!r}")
    lm = l + mu
    nu = abs(lm)
    sigma = 1.0 if lm >= 0.0 else -1.0
    lower_order = nu + sigma * s
    if lower_order <= 0.0:
        raise DomainError(f"regular solution needs nu + s > 0 (got lower order {lower_order!r})")
    p = math.sqrt(E * E - m * m)
    a = math.sqrt(abs(E + m))
    b = sigma * math.copysign(1.0, E) * math.sqrt(abs(E - m))
    return RadialSpinor(
        kind=Kind.SCATTERING,
        upper=BesselTerm(a, nu, p, "J"),
        lower=BesselTerm(b, lower_order, p, "J"),
        s=s,
        mass=m,
        energy=E,
        params={"l": l, "mu": mu, "nu": nu, "p": p},
    )


def deficiency_spinor(sign, gamma, s, m=1.0):
    """(K_{gamma-1}(mr), s e^{-+i pi/2} K_gamma(mr)); sign is +1 or -1.

    The profile is stored real, the lower phase -+i separately.  These solve
    the adjoint problem with eigenvalue +-i m when the mass is dropped from
    the operator body.
    """
    s = _spin(s)
    _check_gamma(gamma)
    _check_mass(m)
    if sign in ("+", 1):
        sign, phase = 1, -1j
    elif sign in ("-", -1):
        sign, phase = -1, 1j
    else:
        raise DomainError(f"sign must be '+' or '-', got {sign!r}")
    return RadialSpinor(
        kind=Kind.DEFICIENCY,
        upper=BesselTerm(1.0, gamma - 1.0, m),
        lower=BesselTerm(float(s), gamma, m),
        s=s,
        mass=m,
        energy=sign * 1j * m,
        gamma=gamma,
        phases=(1.0, phase),
        params={"sign": sign},
    )


def extension_spinor(theta, gamma, s, m=1.0):
    """(K_{gamma-1}(mr) cos(theta/2), -s K_gamma(mr) sin(theta/2)).

    Equals (f+ + e^{i theta} f-) / (2 e^{i theta/2}) for the deficiency pair.
    ``theta_star`` holds the boundary angle read off from the small-r limit;
    the value given by the gamma-function connection map is kept in
    ``params["theta_star_connection"]``.
    """
    s = _spin(s)
    _check_gamma(gamma)
    _check_mass(m)
    if not (0.0 < theta < 2.0 * math.pi):
        raise DomainError(f"theta must lie in (0, 2*pi), got {theta!r}")
    theta_star = None if theta == math.pi else domain_theta_star(theta, gamma)
    return RadialSpinor(
        kind=Kind.EXTENSION_DOMAIN,
        upper=BesselTerm(math.cos(0.5 * theta), gamma - 1.0, m),
        lower=BesselTerm(-s * math.sin(0.5 * theta), gamma, m),
        s=s,
        mass=m,
        gamma=gamma,
        theta=theta,
        theta_star=theta_star,
        params={"theta_star_connection": map_theta(theta, gamma).theta_star},
    )


def bound_spinor(state: BoundState, s=None, normalized=True):
    """N (sqrt(m+E) K_{gamma-1}(kr), s sqrt(m-E) K_gamma(kr)).

    ``s`` defaults to the spin sector of the state's branch.  With s = +1 the
    spinor solves the radial system in the channel l + mu = gamma - 1, with
    s = -1 in l + mu = 1 - gamma (see :func:`abdirac.domain.bound_state_channel`).
    """
    s = state.branch.spin if s is None else _spin(s)
    m, E, k = state.mass, state.energy, state.k
    spinor = RadialSpinor(
        kind=Kind.BOUND,
        upper=BesselTerm(math.sqrt(m + E), state.gamma - 1.0, k),
        lower=BesselTerm(s * math.sqrt(m - E), state.gamma, k),
        s=s,
        mass=m,
        energy=E,
        gamma=state.gamma,
        theta_star=state.theta_star,
        branch=state.branch,
    )
    return normalize(spinor) if normalized else spinor


def zero_mode(branch=Branch.PARTICLE, m=1.0):
    """E = 0 state at gamma = 1/2, normalized in closed form (N = m sqrt(2/pi))."""
    branch = Branch.parse(branch)
    _check_mass(m)
    s = branch.spin
    kind = Kind.ZERO_MODE_PARTICLE if s == 1 else Kind.ZERO_MODE_ANTIPARTICLE
    return RadialSpinor(
        kind=kind,
        upper=BesselTerm(1.0, 0.5, m),
        lower=BesselTerm(float(s), 0.5, m),
        s=s,
        mass=m,
        energy=0.0,
        gamma=0.5,
        theta_star=1.5 * math.pi,
        branch=branch,
        scale=m * ZERO_MODE_NORM,
    )


def _term_sq_sliver(term, r0):
    # int_0^r0 (A r^p)^2 r dr with p = -|nu| > -1
    amp, p = term.small_r_leading()
    return amp * amp * r0 ** (2.0 * p + 2.0) / (2.0 * p + 2.0)


def norm_squared(spinor):
    """int_0^inf (f1^2 + f2^2) r dr, excluding the ``scale`` factor.

    Three pieces: an analytic small-r sliver [0, 1e-10/k] from the leading
    power law, [1e-10/k, 1/k] in the variable log r, and [1/k, r_tail] with
    r_tail where the integrand has dropped below 1e-16 of its value at 1/k.
    """
    if not spinor.square_integrable:
        raise NotNormalizableError(f"{spinor.kind.value} spinor is not square integrable")
    terms = [t for t in (spinor.upper, spinor.lower) if t.coef != 0.0]
    k = spinor.decay
    r_min, r_split = 1e-10 / k, 1.0 / k

    def density(r):
        return sum(t(r) ** 2 for t in terms) * r

    sliver = sum(_term_sq_sliver(t, r_min) for t in terms)
    inner, _ = integrate.quad(
        lambda u: density(math.exp(u)) * math.exp(u),
        math.log(r_min), math.log(r_split),
        epsabs=0.0, epsrel=_QUAD_RTOL, limit=200,
    )
    ref = density(r_split)
    r_tail = 25.0 / k
    while density(r_tail) > 1e-16 * ref:
        r_tail *= 1.5
    outer, _ = integrate.quad(
        density, r_split, r_tail, epsabs=0.0, epsrel=_QUAD_RTOL, limit=200,
    )
    return sliver + inner + outer


def normalize(spinor):
    """Rescale so that int (f1^2 + f2^2) r dr = 1."""
    total = norm_squared(spinor)
    return replace(spinor, scale=1.0 / math.sqrt(total))


def boundary_form(g, f, r):
    """r (g1* f2 - g2* f1): the surface term r g^dagger (i sigma_2) f.

    Returns a float when the result is real, which is always the case for
    spinors without complex phases.
    """
    if r <= 0.0:
        raise DomainError("boundary_form needs r > 0")
    g1, g2 = g.complex_values(r)
    f1, f2 = f.complex_values(r)
    value = r * (np.conj(g1) * f2 - np.conj(g2) * f1)
    value = complex(value)
    return value.real if value.imag == 0.0 else value


def boundary_form_sequence(g, f, m=1.0, exponents=range(3, 9)):
    """|boundary_form| at r = 10^-e / m for each exponent (approach to r -> 0)."""
    return [abs(boundary_form(g, f, 10.0 ** (-e) / m)) for e in exponents]


def small_r_ratio_of(spinor, r):
    """f1 (mr)^{1-gamma} / (-s f2 (mr)^gamma); tends to tan(theta*/2) as r -> 0."""
    m, gamma = spinor.mass, spinor.gamma
    f1, f2 = spinor(r)
    mr = m * r
    return f1 * mr ** (1.0 - gamma) / (-spinor.s * f2 * mr ** gamma)


def sample_radii(k, r_max=None, samples=200, r_min_factor=1e-6):
    """Log-spaced radii from 1e-6/k to r_max (default 20/k)."""
    if r_max is None:
        r_max = 20.0 / k
    r_min = r_min_factor / k
    if not r_max > r_min:
        raise DomainError(f"r_max must exceed {r_min!r}")
    return np.geomspace(r_min, r_max, samples)
