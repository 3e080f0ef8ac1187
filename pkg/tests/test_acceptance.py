"""Acceptance criteria, one test each.  Every test prints a PASS/FAIL line
with the measured value, also when pytest captures output."""

import math

import numpy as np
import pytest

from abdirac.domain import domain_theta
from abdirac.specfun import bessel_j, bessel_k, gamma_fn
from abdirac.spectrum import Branch, coefficient_b, find_zero_mode, gamma_grid, solve_bound_energy
from abdirac.errors import NoBoundStateError
from abdirac.verify import (
    bound_residual,
    charge_conjugate,
    conjugation_mismatch,
    grid_scan_roots,
    quasi_random_parameters,
    residual_radii,
)
from abdirac.wavefunctions import boundary_form_sequence, bound_spinor, extension_spinor, normalize, zero_mode

TS = 1.5 * math.pi
NPOINTS = 1_000_000

# Oracle value frozen before the solver existed: 10^6-point sign-change scan of F
# on [-1 + 1e-9, 1 - 1e-9] at gamma = 0.25, theta* = 3 pi / 2.
PINNED_BRACKET = (0.5660015654355642, 0.5660035654375623)
PINNED_WIDTH = 2e-6


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} ({detail})")
        return ok
    return emit


@pytest.fixture(scope="module")
def qmc_pairs():
    return quasi_random_parameters(100)


def test_01_zero_mode_intersection(report):
    e = max(abs(solve_bound_energy(0.5, TS, b).x) for b in Branch)
    g0 = find_zero_mode(TS)
    ok = e <= 1e-10 and abs(g0 - 0.5) <= 1e-10
    assert report(1, "zero-mode intersection", ok, f"max|E/m|={e:.2e}, gamma0-1/2={g0 - 0.5:.2e}")


def test_02_mirror_symmetry(report):
    grid = gamma_grid(0.05, 0.95, 91)
    worst = max(abs(solve_bound_energy(g, TS, Branch.PARTICLE).x + solve_bound_energy(g, TS, Branch.ANTIPARTICLE).x)
                for g in grid)
    assert report(2, "mirror symmetry", worst <= 1e-10, f"max|Ep+Ea|/m={worst:.2e} over 91 points")


def _reduced_root(gamma):
    from scipy import optimize
    b = coefficient_b(gamma)
    # x = -1 is a spurious root of x = b (1 - x^2)^(1-gamma) - 1
    return optimize.brentq(lambda x: x + 1 - b * (1 - x * x) ** (1 - gamma), -1 + 1e-12, 1.0, xtol=1e-15)


def test_03_reduced_form_equivalence(report):
    grid = np.round(np.arange(0.05, 0.501, 0.05), 2)
    worst = max(abs(solve_bound_energy(float(g), TS).x - _reduced_root(float(g))) for g in grid)
    b_half = abs(coefficient_b(0.5) - 1.0)
    ok = worst <= 1e-10 and b_half <= 1e-15
    assert report(3, "energy equation vs reduced form", ok, f"max diff={worst:.2e}, |b(1/2)-1|={b_half:.1e}")


def test_04_solver_vs_oracle(report, qmc_pairs):
    failures, worst = [], 0.0
    for gamma, ts in qmc_pairs:
        brackets = grid_scan_roots(gamma, ts, NPOINTS)
        x = solve_bound_energy(gamma, ts).x
        if len(brackets) != 1:
            failures.append((gamma, ts, len(brackets)))
            continue
        lo, hi = brackets[0]
        worst = max(worst, abs(x - 0.5 * (lo + hi)))
        if not lo <= x <= hi:
            failures.append((gamma, ts, x))
    ok = not failures
    assert report(4, "solver inside unique oracle bracket", ok,
                  f"{100 - len(failures)}/100 pairs, max|E-mid|={worst:.2e}, width={2 / NPOINTS:.0e}"), failures


def test_05_eigenfunction_residual(report, qmc_pairs):
    worst_good, worst_ratio, worst_bad = 0.0, math.inf, math.inf
    spinors = []
    for gamma, ts in qmc_pairs:
        for b in Branch:
            state = solve_bound_energy(gamma, ts, b)
            spinors.append((bound_spinor(state), state.k))
    spinors += [(zero_mode(b), 1.0) for b in Branch]
    for sp, k in spinors:
        radii = residual_radii(k)
        good = bound_residual(sp, radii).max_relative
        bad = min(bound_residual(sp, radii, energy=sp.energy + d).max_relative for d in (0.1, -0.1))
        worst_good = max(worst_good, good)
        worst_bad = min(worst_bad, bad)
        worst_ratio = min(worst_ratio, bad / max(good, 1e-300))
    ok = worst_good <= 1e-8 and worst_ratio >= 1e4
    assert report(5, "eigenfunction residual", ok,
                  f"{len(spinors)} spinors, max residual={worst_good:.1e}, min perturbed={worst_bad:.1e}")


# The boundary form between a bound spinor and the matching extension spinor
# vanishes like r^(2 min(gamma, 1 - gamma)); reaching 1e-6 by r = 1e-8/m needs
# 0.35 <= gamma <= 0.65.  At gamma = 1/2 it is zero identically.
CLOSURE_GAMMAS = (0.35, 0.4, 0.45, 0.55, 0.6, 0.65)
CLOSURE_THETAS = (1.1 * math.pi, 1.3 * math.pi, 1.5 * math.pi, 1.7 * math.pi, 1.9 * math.pi)


def _mismatched(theta):
    t = theta + math.pi / 2
    return t if t < 2 * math.pi else theta - math.pi / 2


def test_06_boundary_domain_closure(report):
    worst_final, worst_mismatch, bad = 0.0, math.inf, []
    for gamma in CLOSURE_GAMMAS + (0.5,):
        for ts in CLOSURE_THETAS:
            b = bound_spinor(solve_bound_energy(gamma, ts))
            theta = domain_theta(ts, gamma)
            seq = boundary_form_sequence(b, extension_spinor(theta, gamma, 1))
            mono = gamma == 0.5 or all(y < x for x, y in zip(seq, seq[1:]))
            if gamma == 0.5 and max(seq) > 1e-13:
                mono = False
            if not (mono and seq[-1] < 1e-6):
                bad.append((gamma, ts, seq))
            worst_final = max(worst_final, seq[-1])
            mis = boundary_form_sequence(b, extension_spinor(_mismatched(theta), gamma, 1))
            worst_mismatch = min(worst_mismatch, min(mis))
    ok = not bad and worst_mismatch > 1e-3
    assert report(6, "boundary-domain closure", ok,
                  f"max |form(1e-8)|={worst_final:.1e}, min mismatched={worst_mismatch:.2f}"), bad


def test_06b_closure_rate_outside_band(capsys):
    # below the band the decay is real but slow: slope 2 gamma per decade
    gamma, ts = 0.2, 1.5 * math.pi
    b = bound_spinor(solve_bound_energy(gamma, ts))
    seq = boundary_form_sequence(b, extension_spinor(domain_theta(ts, gamma), gamma, 1))
    slopes = np.diff(np.log10(seq))
    assert all(y < x for x, y in zip(seq, seq[1:]))
    assert np.allclose(slopes, -2 * gamma, atol=0.02)


def test_07_existence_window(report):
    raised = 0
    for ts in (math.pi / 4, math.pi / 2, math.pi - 1e-3):
        try:
            solve_bound_energy(0.5, ts)
        except NoBoundStateError:
            raised += 1
    found = [solve_bound_energy(0.5, ts).x for ts in (math.pi + 1e-3, TS, 2 * math.pi - 1e-3)]
    ok = raised == 3 and found[0] > 0.9 and found[2] < -0.9
    assert report(7, "existence window", ok,
                  f"{raised}/3 rejected, E(pi+)={found[0]:.7f}, E(2pi-)={found[2]:.7f}")


# The small-x law is checked at nu >= 0.4: the first correction to x^nu K_nu(x),
# Gamma(-nu)/Gamma(nu) (x/2)^(2 nu), is 2.4e-4 at nu = 0.3, x = 1e-6.
SMALL_X_ORDERS = (0.4, 0.5, 0.7, 0.9)


def test_08_special_functions(report):
    xs = np.linspace(0.1, 20.0, 400)
    k_err = max(abs(bessel_k(0.5, x) / (math.sqrt(math.pi / (2 * x)) * math.exp(-x)) - 1) for x in xs)
    j_err = max(abs(bessel_j(0.5, x) - math.sqrt(2 / (math.pi * x)) * math.sin(x))
                / abs(math.sqrt(2 / (math.pi * x)) * math.sin(x)) for x in xs)
    refl = max(abs(bessel_k(-nu, x) / bessel_k(nu, x) - 1) for nu in np.arange(0.1, 1.0, 0.1) for x in xs)
    small = max(abs(1e-6**nu * bessel_k(nu, 1e-6) / (2 ** (nu - 1) * gamma_fn(nu)) - 1) for nu in SMALL_X_ORDERS)
    ok = k_err <= 1e-12 and j_err <= 1e-12 and refl <= 1e-14 and small <= 1e-4
    assert report(8, "special functions", ok,
                  f"K1/2={k_err:.1e}, J1/2={j_err:.1e}, reflection={refl:.1e}, small-x={small:.1e}")


def test_09_zero_mode_normalization(report):
    n_err = max(abs(normalize(zero_mode(b, m)).scale / (m * math.sqrt(2 / math.pi)) - 1)
                for b in Branch for m in (0.5, 1.0, 2.0))
    conj = conjugation_mismatch(charge_conjugate(zero_mode(Branch.PARTICLE)), zero_mode(Branch.ANTIPARTICLE),
                                residual_radii(1.0))
    ok = n_err <= 1e-8 and conj <= 1e-14
    assert report(9, "zero-mode normalization and conjugation", ok, f"N rel err={n_err:.1e}, C mismatch={conj:.1e}")


def test_10_pinned_value(report):
    x = solve_bound_energy(0.25, TS, Branch.PARTICLE).x
    mid = 0.5 * sum(PINNED_BRACKET)
    live = grid_scan_roots(0.25, TS, NPOINTS)
    ok = abs(x - mid) <= PINNED_WIDTH and live == [PINNED_BRACKET]
    assert report(10, "pinned E(0.25, 3pi/2)", ok, f"E/m={x!r}, |E-mid|={abs(x - mid):.1e}")
