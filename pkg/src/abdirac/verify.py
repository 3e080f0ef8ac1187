"""Independent checks of everything :mod:`spectrum` and :mod:`wavefunctions`
produce.

* :func:`dirac_residual` applies the radial Dirac operator to a spinor, with
  derivatives either from Bessel recurrences or from Richardson-extrapolated
  five-point differences.  It never looks at how the energy was obtained.
* :func:`grid_scan_roots` brackets roots of the energy equation by a dense
  sign scan in the variable x = E/m, a different path from the solver's
  bracketing in x = tanh(t).
* :func:`charge_conjugate` applies C = i sigma_2.

:func:`run_suite` bundles these into the named suites used by ``abdirac verify``.
"""

import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np
from scipy.stats import qmc

from . import specfun
from .domain import _spin, bound_state_channel, domain_theta
from .errors import DomainError, NoBoundStateError
from .spectrum import Branch, energy_residual, find_zero_mode, solve_bound_energy
from .wavefunctions import (
    Kind,
    RadialSpinor,
    boundary_form_sequence,
    bound_spinor,
    extension_spinor,
    norm_squared,
    zero_mode,
)

SCAN_EDGE = 1e-9
QMC_SEED = 20240611


@dataclass
class ResidualReport:
    radii: list
    residual_upper: list
    residual_lower: list
    max_relative: float
    method: str = "analytic"

    def to_dict(self):
        d = asdict(self)
        d["residual_upper"] = [abs(v) for v in self.residual_upper]
        d["residual_lower"] = [abs(v) for v in self.residual_lower]
        return d


def _fd_derivative(fun, r, h):
    def five_point(step):
        if r - 2.0 * step <= 0.0:
            raise DomainError(f"stencil reaches r <= 0 at r={r!r}, h={step!r}")
        return (fun(r - 2 * step) - 8 * fun(r - step) + 8 * fun(r + step) - fun(r + 2 * step)) / (12 * step)

    # five-point error is O(h^4); one Richardson step removes it
    return (16.0 * five_point(0.5 * h) - five_point(h)) / 15.0


def spinor_derivative(spinor, r, method="analytic", rel_step=1e-4):
    if method == "analytic":
        return spinor.derivative(r)
    if method == "fd":
        h = rel_step * r
        return (
            _fd_derivative(lambda x: spinor(x)[0], r, h),
            _fd_derivative(lambda x: spinor(x)[1], r, h),
        )
    raise DomainError(f"unknown derivative method {method!r}")


def dirac_residual(spinor, E, l, mu, s, radii, *, mass=None, method="analytic"):
    """Residual of the radial system h_r f = E f at each radius.

    R1 = m f1 + s f2' + (l+mu+s)/r f2 - E f1 and
    R2 = -s f1' + (l+mu)/r f1 - m f2 - E f2, with constant phases of the
    spinor applied.  ``mass`` is the mass in the operator body (defaults to
    the spinor's); ``E`` may be complex.  ``max_relative`` divides by the
    local scale sum over components of |E f| + |m f| + |f'|.
    """
    s = _spin(s)
    m = spinor.mass if mass is None else mass
    p1, p2 = spinor.phases
    res1, res2 = [], []
    worst = 0.0
    for r in radii:
        if r <= 0.0:
            raise DomainError("radii must be positive")
        f1, f2 = spinor(r)
        d1, d2 = spinor_derivative(spinor, r, method)
        f1, f2, d1, d2 = p1 * f1, p2 * f2, p1 * d1, p2 * d2
        r1 = m * f1 + s * d2 + (l + mu + s) / r * f2 - E * f1
        r2 = -s * d1 + (l + mu) / r * f1 - m * f2 - E * f2
        scale = sum(abs(E * f) + abs(m * f) + abs(d) for f, d in ((f1, d1), (f2, d2)))
        res1.append(r1)
        res2.append(r2)
        worst = max(worst, max(abs(r1), abs(r2)) / scale)
    return ResidualReport(
        radii=[float(r) for r in radii],
        residual_upper=res1,
        residual_lower=res2,
        max_relative=worst,
        method=method,
    )


def bound_residual(spinor, radii, *, energy=None, method="analytic"):
    """dirac_residual of a bound or zero-mode spinor in its own channel."""
    l, mu = bound_state_channel(spinor.gamma, spinor.s)
    E = spinor.energy if energy is None else energy
    return dirac_residual(spinor, E, l, mu, spinor.s, radii, method=method)


def residual_radii(k, count=50):
    """``count`` log-spaced radii over [0.01/k, 10/k]."""
    return np.geomspace(0.01 / k, 10.0 / k, count)


def grid_scan_roots(gamma, theta_star, npoints=1_000_000):
    """Sign-change brackets of the energy residual on a uniform x grid.

    The grid covers [-1 + 1e-9, 1 - 1e-9].  A grid point where the residual
    vanishes exactly is returned as a degenerate bracket (x, x).
    """
    if npoints < 10_000:
        raise DomainError("grid scan needs at least 10^4 points")
    x = np.linspace(-1.0 + SCAN_EDGE, 1.0 - SCAN_EDGE, npoints)
    sign = np.sign(energy_residual(x, gamma, theta_star))
    brackets = [(float(x[i]), float(x[i])) for i in np.flatnonzero(sign == 0.0)]
    for i in np.flatnonzero(sign[:-1] * sign[1:] < 0.0):
        brackets.append((float(x[i]), float(x[i + 1])))
    return sorted(brackets)


def charge_conjugate(spinor: RadialSpinor):
    """Apply C = i sigma_2: (f1, f2) -> (f2, -f1), s -> -s, branch flipped."""
    kind = {
        Kind.ZERO_MODE_PARTICLE: Kind.ZERO_MODE_ANTIPARTICLE,
        Kind.ZERO_MODE_ANTIPARTICLE: Kind.ZERO_MODE_PARTICLE,
    }.get(spinor.kind, spinor.kind)
    return replace(
        spinor,
        kind=kind,
        upper=spinor.lower,
        lower=spinor.upper.scaled(-1.0),
        phases=(spinor.phases[1], spinor.phases[0]),
        s=-spinor.s,
        branch=None if spinor.branch is None else spinor.branch.conjugate(),
        energy=None if spinor.energy is None else -spinor.energy,
    )


def conjugation_mismatch(f, g, radii):
    """Componentwise relative distance between f and +-g, minimized over the sign."""
    best = math.inf
    for sign in (1.0, -1.0):
        worst = 0.0
        for r in radii:
            (f1, f2), (g1, g2) = f(r), g(r)
            worst = max(worst, abs(f1 - sign * g1) / abs(g1), abs(f2 - sign * g2) / abs(g2))
        best = min(best, worst)
    return best


def quasi_random_parameters(count, gamma_range=(0.05, 0.95), theta_range=(math.pi + 0.05, 2 * math.pi - 0.05)):
    """Fixed scrambled Halton points in the (gamma, theta*) box."""
    sampler = qmc.Halton(d=2, scramble=True, seed=QMC_SEED)
    pts = qmc.scale(sampler.random(count), [gamma_range[0], theta_range[0]], [gamma_range[1], theta_range[1]])
    return [(float(g), float(t)) for g, t in pts]


@dataclass
class Check:
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        self.passed = bool(self.passed)
        self.value = float(self.value)


def _rel(a, b):
    return abs(a - b) / abs(b)


def _suite_specfun():
    checks = []
    xs = np.linspace(0.1, 20.0, 60)
    worst_k = max(_rel(specfun.bessel_k(0.5, x), math.sqrt(math.pi / (2 * x)) * math.exp(-x)) for x in xs)
    checks.append(Check("K_1/2 closed form", worst_k <= 1e-12, worst_k, 1e-12))
    worst_j = max(
        abs(specfun.bessel_j(0.5, x) - math.sqrt(2 / (math.pi * x)) * math.sin(x)) / math.sqrt(2 / (math.pi * x))
        for x in xs
    )
    checks.append(Check("J_1/2 closed form", worst_j <= 1e-12, worst_j, 1e-12))
    worst_refl = max(
        _rel(specfun.bessel_k(-nu, x), specfun.bessel_k(nu, x))
        for nu in np.arange(0.1, 1.0, 0.1)
        for x in np.linspace(0.1, 20.0, 40)
    )
    checks.append(Check("K reflection", worst_refl <= 1e-14, worst_refl, 1e-14))
    worst_small = max(
        _rel(1e-6 ** nu * specfun.bessel_k(nu, 1e-6), 2 ** (nu - 1) * specfun.gamma_fn(nu))
        # below nu ~ 0.35 the next term, Gamma(-nu)/Gamma(nu) (x/2)^(2 nu), exceeds 1e-4 at x = 1e-6
        for nu in (0.4, 0.5, 0.7, 0.9)
    )
    checks.append(Check("K small-x law", worst_small <= 1e-4, worst_small, 1e-4))
    worst_rec = max(
        _rel(specfun.bessel_k(nu + 1, x) - specfun.bessel_k(nu - 1, x), 2 * nu / x * specfun.bessel_k(nu, x))
        for nu in (-0.7, 0.3, 0.5, 1.2, 1.9)
        for x in (0.05, 0.5, 1.9, 2.1, 7.0, 30.0)
    )
    checks.append(Check("K recurrence", worst_rec <= 1e-10, worst_rec, 1e-10))
    return checks


def _suite_spectrum():
    checks = []
    ts = 1.5 * math.pi
    e0 = max(abs(solve_bound_energy(0.5, ts, b).x) for b in Branch)
    checks.append(Check("zero energy at gamma=1/2", e0 <= 1e-10, e0, 1e-10))
    g0 = find_zero_mode(ts)
    checks.append(Check("zero-mode gamma", abs(g0 - 0.5) <= 1e-10, abs(g0 - 0.5), 1e-10))
    grid = np.linspace(0.05, 0.95, 91)
    mirror = max(
        abs(solve_bound_energy(g, ts, Branch.PARTICLE).x + solve_bound_energy(g, ts, Branch.ANTIPARTICLE).x)
        for g in grid
    )
    checks.append(Check("mirror symmetry", mirror <= 1e-10, mirror, 1e-10))
    window = []
    for t in (math.pi / 4, math.pi / 2, math.pi - 1e-3):
        try:
            solve_bound_energy(0.5, t)
        except NoBoundStateError:
            window.append(True)
        else:
            window.append(False)
    edges = (solve_bound_energy(0.5, math.pi + 1e-3).x > 0.9, solve_bound_energy(0.5, 2 * math.pi - 1e-3).x < -0.9)
    ok = all(window) and all(edges)
    checks.append(Check("existence window", ok, float(ok), 1.0))
    return checks


def _suite_oracle(count=20, npoints=100_000):
    worst = 0.0
    unique = True
    for g, t in quasi_random_parameters(count):
        brackets = grid_scan_roots(g, t, npoints)
        if len(brackets) != 1:
            unique = False
            continue
        lo, hi = brackets[0]
        x = solve_bound_energy(g, t).x
        worst = max(worst, max(lo - x, x - hi, 0.0))
    width = 2.0 / npoints
    return [
        Check("oracle bracket uniqueness", unique, float(unique), 1.0, {"pairs": count, "npoints": npoints}),
        Check("solver inside oracle bracket", unique and worst == 0.0, worst, width),
    ]


def _suite_wavefunctions():
    checks = []
    worst = 0.0
    for g, t in quasi_random_parameters(10):
        for b in Branch:
            state = solve_bound_energy(g, t, b)
            psi = bound_spinor(state)
            worst = max(worst, bound_residual(psi, residual_radii(state.k)).max_relative)
    for b in Branch:
        worst = max(worst, bound_residual(zero_mode(b), residual_radii(1.0)).max_relative)
    checks.append(Check("bound residual (analytic)", worst <= 1e-8, worst, 1e-8))
    zm = zero_mode()
    n = 1.0 / math.sqrt(norm_squared(replace(zm, scale=1.0)))
    err = _rel(n, math.sqrt(2 / math.pi))
    checks.append(Check("zero-mode normalization", err <= 1e-8, err, 1e-8))
    # the approach to 0 goes like r^(2 min(gamma, 1 - gamma)); at gamma = 1/2 the form vanishes identically
    gamma, ts = 0.45, 1.25 * math.pi
    psi = bound_spinor(solve_bound_energy(gamma, ts))
    theta = domain_theta(ts, gamma)
    seq = boundary_form_sequence(psi, extension_spinor(theta, gamma, 1))
    mono = all(b < a for a, b in zip(seq, seq[1:]))
    checks.append(Check("boundary form closure", mono and seq[-1] < 1e-6, seq[-1], 1e-6))
    return checks


def _suite_conjugation():
    p, a = zero_mode(Branch.PARTICLE), zero_mode(Branch.ANTIPARTICLE)
    c = charge_conjugate(p)
    worst = conjugation_mismatch(c, a, np.geomspace(1e-3, 20.0, 40))
    return [Check("C maps zero modes", worst <= 1e-14, worst, 1e-14)]


SUITES = {
    "specfun": _suite_specfun,
    "spectrum": _suite_spectrum,
    "oracle": _suite_oracle,
    "wavefunctions": _suite_wavefunctions,
    "conjugation": _suite_conjugation,
}


def run_suite(name="all"):
    """Run one named suite (or all) and return a JSON-ready report."""
    names = list(SUITES) if name == "all" else [name]
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise DomainError(f"unknown suite {unknown[0]!r}; choose from {sorted(SUITES)} or 'all'")
    report = {"suites": {}, "passed": True}
    for n in names:
        checks = SUITES[n]()
        report["suites"][n] = [asdict(c) for c in checks]
        report["passed"] = report["passed"] and all(c.passed for c in checks)
    return report
