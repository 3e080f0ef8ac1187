"""How fast the boundary form between a bound spinor and its extension
spinor goes to zero, per gamma.

Prints |form| at r = 10^-3 ... 10^-12 (in units of 1/m) and the fitted
slope per decade, which should be 2 min(gamma, 1 - gamma).  A mismatched
extension (theta shifted by pi/2) is shown for contrast.
"""

import math

import numpy as np

from abdirac.domain import domain_theta
from abdirac.spectrum import solve_bound_energy
from abdirac.wavefunctions import boundary_form_sequence, bound_spinor, extension_spinor

EXPONENTS = range(3, 13)


def main(theta_star=1.5 * math.pi):
    print(f"theta* = {theta_star / math.pi:.3f} pi")
    print(f"{'gamma':>6} {'form(1e-8)':>11} {'form(1e-12)':>12} {'slope':>7} {'expected':>8} {'mismatch':>9}")
    for gamma in (0.1, 0.2, 0.3, 0.35, 0.4, 0.45, 0.55, 0.6, 0.7, 0.8, 0.9):
        b = bound_spinor(solve_bound_energy(gamma, theta_star))
        theta = domain_theta(theta_star, gamma)
        seq = boundary_form_sequence(b, extension_spinor(theta, gamma, 1), exponents=EXPONENTS)
        slope = -np.polyfit(list(EXPONENTS), np.log10(seq), 1)[0]
        shifted = theta + math.pi / 2 if theta + math.pi / 2 < 2 * math.pi else theta - math.pi / 2
        mis = boundary_form_sequence(b, extension_spinor(shifted, gamma, 1), exponents=[8])[0]
        print(f"{gamma:6.2f} {seq[5]:11.2e} {seq[-1]:12.2e} {slope:7.3f} {2 * min(gamma, 1 - gamma):8.3f} {mis:9.3f}")


if __name__ == "__main__":
    main()
