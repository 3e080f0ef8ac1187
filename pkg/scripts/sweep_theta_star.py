"""Energy curves E(gamma)/m of both branches for several theta*.

Writes one long-format CSV with a theta_star column.  Usage:

    python3 scripts/sweep_theta_star.py [--steps 91] [--out curves.csv]
"""

import argparse
import csv
import math
import sys

from abdirac.spectrum import Branch, gamma_grid, sweep_energy_curve

DEFAULT_THETAS = (1.1, 1.25, 1.5, 1.75, 1.9)  # units of pi


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--steps", type=int, default=91)
    ap.add_argument("--thetas-over-pi", type=float, nargs="+", default=DEFAULT_THETAS)
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)

    grid = gamma_grid(0.05, 0.95, args.steps)
    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["theta_star_over_pi", "gamma", "branch", "energy_over_m", "status"])
    for t in args.thetas_over_pi:
        for branch in Branch:
            curve = sweep_energy_curve(t * math.pi, branch, 1.0, grid)
            for p in curve.points:
                w.writerow([t, repr(p.gamma), branch.value, repr(p.energy_over_m), p.status])
    if out is not sys.stdout:
        out.close()


if __name__ == "__main__":
    main()
