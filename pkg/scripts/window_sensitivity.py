"""How the Table 1 and Table 4 errors depend on the trimming window.

Two sweeps for every (α, ν) cell at the caption budgets:

1. window target: solve_window(ν, target) for targets 1e-20 (ε = 1e-17,
   the default) up to 1e-14;
2. grid phase: shift y_lo by a fraction of h with d fixed, which moves the
   trapezoid nodes without changing the trimmed mass appreciably.

The discretization error of the trapezoid sum oscillates with the grid
phase, so cells whose published error sits far above the rounding floor
can move by an order of magnitude under small window changes.

    python3 scripts/window_sensitivity.py --nu 1 2 4 --alpha 0.05 0.02
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from reference_tables import TABLE1, TABLE4  # noqa: E402

from chiquad.baselines import truncated_legendre  # noqa: E402
from chiquad.mori import MoriWindow, solve_window  # noqa: E402
from chiquad.scenario import ScenarioSpec, t_interval_integrand  # noqa: E402
from chiquad.tables import default_budget  # noqa: E402
from chiquad.trapz import GridSpec, trapezoid_sum  # noqa: E402

TARGETS = (1e-20, 1e-19, 1e-18, 1e-17, 1e-16, 1e-15, 1e-14)
PHASES = (-0.5, -0.25, 0.0, 0.25, 0.5)


def cell_errors(nu, alpha, window, n):
    a = t_interval_integrand(ScenarioSpec(nu, alpha))
    h = window.d / (n - 1)
    trap = trapezoid_sum(nu, a, GridSpec(window.y_lo, h, n)) - (1 - alpha)
    gl = truncated_legendre(nu, a, window, n).value - (1 - alpha)
    return trap, gl


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--nu", type=int, nargs="+", default=[1, 2, 3, 4, 5, 10, 100, 1000])
    p.add_argument("--alpha", type=float, nargs="+", default=[0.10, 0.05, 0.02])
    args = p.parse_args()

    for alpha in args.alpha:
        for nu in args.nu:
            n = default_budget(nu)
            print(f"alpha={alpha} nu={nu} n={n}  published T1={TABLE1[(alpha, nu)]:.2e} T4={TABLE4[(alpha, nu)]:.2e}")
            for target in TARGETS:
                w = solve_window(nu, target)
                t1, t4 = cell_errors(nu, alpha, w, n)
                print(f"  target={target:.0e}  d={w.d:8.4f}  T1={t1: .2e}  T4={t4: .2e}")
            w = solve_window(nu, 1e-20)
            h = w.d / (n - 1)
            for phase in PHASES:
                shifted = MoriWindow(nu, w.y_lo + phase * h, w.d, w.bound)
                t1, t4 = cell_errors(nu, alpha, shifted, n)
                print(f"  phase={phase:+.2f}h          T1={t1: .2e}  T4={t4: .2e}")


if __name__ == "__main__":
    main()
