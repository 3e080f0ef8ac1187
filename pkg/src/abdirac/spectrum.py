r"""Bound-state energies of the singular channel.

The energy equation in dimensionless form (x = E/m) reads

.. math::
    (1+x)^\gamma (1-x)^{\gamma-1} = R(\gamma, \theta^*), \qquad
    R = -2^{2\gamma-1}\frac{\Gamma(\gamma)}{\Gamma(1-\gamma)}\tan\frac{\theta^*}{2}.

The left side is strictly increasing on (-1, 1) and covers (0, inf), so a
root exists iff R > 0, i.e. theta* in (pi, 2 pi), and it is unique.

The solver works with x = tanh(t).  In that variable the logarithm of the
equation becomes

.. math::
    (1-\gamma)\log(1+e^{2t}) - \gamma \log(1+e^{-2t}) = \log\Gamma(\gamma)
    - \log\Gamma(1-\gamma) + \log(-\tan(\theta^*/2)),

which is smooth, increasing and asymptotically linear on the whole real
line, so there is no need to clip the domain near the thresholds x = +-1, and
k/m = 1/cosh(t) keeps full relative accuracy there.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .errors import ConvergenceError, DomainError, NoBoundStateError, NoCrossingError
from .specfun import gamma_fn

__all__ = [
    "Branch",
    "BoundState",
    "CurvePoint",
    "EnergyCurve",
    "energy_rhs",
    "energy_residual",
    "coefficient_b",
    "solve_bound_energy",
    "sweep_energy_curve",
    "find_zero_mode",
]

MAX_ITER = 200
ZERO_MODE_EDGE = 1e-4


class Branch(enum.Enum):
    PARTICLE = "particle"
    ANTIPARTICLE = "antiparticle"

    @property
    def sign(self):
        return 1.0 if self is Branch.PARTICLE else -1.0

    @property
    def spin(self):
        """Spin sector the branch lives in (s = +1 particle, s = -1 antiparticle)."""
        return 1 if self is Branch.PARTICLE else -1

    def conjugate(self):
        return Branch.ANTIPARTICLE if self is Branch.PARTICLE else Branch.PARTICLE

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


@dataclass(frozen=True)
class BoundState:
    """A bound level.  ``energy`` and ``k`` carry units of the mass."""

    energy: float
    k: float
    gamma: float
    theta_star: float
    branch: Branch
    mass: float = 1.0
    source: str = "solver"

    @property
    def x(self):
        return self.energy / self.mass


def _check_gamma(gamma):
    if not (0.0 < gamma < 1.0):
        raise DomainError(f"gamma must lie in (0, 1), got {gamma!r}")


def _check_theta_star(theta_star):
    if not (0.0 < theta_star < 2.0 * math.pi) or theta_star == math.pi:
        raise DomainError(f"theta_star must lie in (0, 2*pi) minus {{pi}}, got {theta_star!r}")


def energy_rhs(gamma, theta_star):
    """R(gamma, theta*), the dimensionless right side of the energy equation."""
    _check_gamma(gamma)
    _check_theta_star(theta_star)
    return (
        -(2.0 ** (2.0 * gamma - 1.0))
        * gamma_fn(gamma)
        / gamma_fn(1.0 - gamma)
        * math.tan(0.5 * theta_star)
    )


def energy_residual(x, gamma, theta_star):
    """F(x) = (1+x)^gamma (1-x)^(gamma-1) - R.  Accepts scalars or arrays."""
    rhs = energy_rhs(gamma, theta_star)
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) >= 1.0):
        raise DomainError("energy_residual requires |x| < 1")
    out = (1.0 + xa) ** gamma * (1.0 - xa) ** (gamma - 1.0) - rhs
    return float(out) if out.ndim == 0 else out


def coefficient_b(gamma):
    """b = 2^(2 gamma - 1) Gamma(gamma)^2 sin(pi gamma) / pi."""
    _check_gamma(gamma)
    return 2.0 ** (2.0 * gamma - 1.0) * gamma_fn(gamma) ** 2 * math.sin(math.pi * gamma) / math.pi


def _log_rhs_core(gamma, theta_star):
    # log R without the (2 gamma - 1) log 2 term, which cancels in the t-form.
    return (
        math.log(gamma_fn(gamma))
        - math.log(gamma_fn(1.0 - gamma))
        + math.log(-math.tan(0.5 * theta_star))
    )


def _log1pexp(z):
    return z + math.log1p(math.exp(-z)) if z > 0.0 else math.log1p(math.exp(z))


def _t_residual(t, gamma, target):
    return (1.0 - gamma) * _log1pexp(2.0 * t) - gamma * _log1pexp(-2.0 * t) - target


def _solve_t(gamma, target):
    # residual ~ 2(1-gamma) t for t >> 0 and ~ 2 gamma t for t << 0
    hi = max(1.0, abs(target) / (2.0 * (1.0 - gamma)) + 1.0)
    lo = -max(1.0, abs(target) / (2.0 * gamma) + 1.0)
    while _t_residual(hi, gamma, target) < 0.0:
        hi *= 2.0
    while _t_residual(lo, gamma, target) > 0.0:
        lo *= 2.0
    try:
        t, info = optimize.brentq(
            _t_residual, lo, hi, args=(gamma, target),
            xtol=1e-15, rtol=8.9e-16, maxiter=MAX_ITER, full_output=True,
        )
    except RuntimeError as exc:  # pragma: no cover
        raise ConvergenceError(str(exc)) from exc
    if not info.converged:  # pragma: no cover
        raise ConvergenceError(info.flag)
    return t


def solve_bound_energy(gamma, theta_star, branch=Branch.PARTICLE, m=1.0):
    """Solve the energy equation for one branch.

    The particle level is the unique root; the antiparticle level is its charge
    conjugate, E_a = -E_p.

    Raises
    ------
    NoBoundStateError
        If theta_star lies outside (pi, 2 pi).
    """
    branch = Branch.parse(branch)
    _check_gamma(gamma)
    if not (m > 0.0 and math.isfinite(m)):
        raise DomainError(f"mass must be positive, got {m!r}")
    if not (math.pi < theta_star < 2.0 * math.pi):
        raise NoBoundStateError(
            f"no bound state for theta_star = {theta_star!r}; needs pi < theta_star < 2*pi"
        )
    t = _solve_t(gamma, _log_rhs_core(gamma, theta_star))
    x = branch.sign * math.tanh(t)
    u = math.exp(-abs(t))
    return BoundState(
        energy=m * x,
        k=m * 2.0 * u / (1.0 + u * u),  # m / cosh(t) without overflow
        gamma=gamma,
        theta_star=theta_star,
        branch=branch,
        mass=m,
    )


@dataclass(frozen=True)
class CurvePoint:
    gamma: float
    state: BoundState | None
    status: str = "ok"
    error: str | None = None

    @property
    def energy_over_m(self):
        return math.nan if self.state is None else self.state.x

    @property
    def k_over_m(self):
        return math.nan if self.state is None else self.state.k / self.state.mass


@dataclass
class EnergyCurve:
    """One branch swept over gamma at fixed theta*; failed points are kept as gaps."""

    theta_star: float
    branch: Branch
    mass: float
    points: list = field(default_factory=list)

    @property
    def gammas(self):
        return np.array([p.gamma for p in self.points])

    @property
    def energies(self):
        return np.array([p.energy_over_m for p in self.points])


def gamma_grid(gamma_min, gamma_max, steps):
    """Uniform grid; ``steps`` is the number of points."""
    if steps < 1:
        raise DomainError("steps must be >= 1")
    if steps == 1:
        grid = np.array([gamma_min], dtype=float)
    else:
        grid = np.linspace(gamma_min, gamma_max, steps)
    if not (grid[0] > 0.0 and grid[-1] < 1.0):
        raise DomainError("gamma grid must lie strictly inside (0, 1)")
    if steps > 1 and not np.all(np.diff(grid) > 0.0):
        raise DomainError("gamma grid must be strictly increasing")
    return grid


def sweep_energy_curve(theta_star, branch, m=1.0, gammas=None):
    """Energy curve of one branch along ``gammas``.

    Points with gamma > 1/2 are flagged ``"extrapolated"``: the two-branch
    reduced equation only covers 0 < gamma < 1/2.  Solver failures become gaps
    with status ``"no_bound_state"`` (or ``"failed"``) instead of aborting.
    """
    branch = Branch.parse(branch)
    if gammas is None:
        gammas = gamma_grid(0.05, 0.95, 91)
    gammas = [float(g) for g in gammas]
    if any(b <= a for a, b in zip(gammas, gammas[1:])):
        raise DomainError("gamma grid must be strictly increasing")
    curve = EnergyCurve(theta_star=theta_star, branch=branch, mass=m)
    for g in gammas:
        try:
            state = solve_bound_energy(g, theta_star, branch, m)
        except NoBoundStateError as exc:
            curve.points.append(CurvePoint(g, None, "no_bound_state", str(exc)))
        except (DomainError, ConvergenceError) as exc:
            curve.points.append(CurvePoint(g, None, "failed", str(exc)))
        else:
            curve.points.append(CurvePoint(g, state, "extrapolated" if g > 0.5 else "ok"))
    return curve


def find_zero_mode(theta_star, m=1.0, tol=1e-14):
    """Flux fraction gamma at which the particle level crosses E = 0.

    Bisection on the sign of E(gamma) over (1e-4, 1 - 1e-4).
    """
    if not (math.pi < theta_star < 2.0 * math.pi):
        raise NoBoundStateError(f"no bound state for theta_star = {theta_star!r}")

    def energy(g):
        return solve_bound_energy(g, theta_star, Branch.PARTICLE, m).energy

    lo, hi = ZERO_MODE_EDGE, 1.0 - ZERO_MODE_EDGE
    e_lo, e_hi = energy(lo), energy(hi)
    if e_lo == 0.0:
        return lo
    if e_hi == 0.0:
        return hi
    if (e_lo > 0.0) == (e_hi > 0.0):
        raise NoCrossingError(f"E(gamma) keeps one sign on ({lo}, {hi}) at theta_star = {theta_star!r}")
    return optimize.bisect(energy, lo, hi, xtol=tol, rtol=8.9e-16, maxiter=MAX_ITER)
