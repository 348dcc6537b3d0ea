"""Error against node count for both trapezoid procedures on the t-interval integrand.

    python3 scripts/convergence_study.py --nu 1 2 5 10 --alpha 0.05

For each ν prints (n, log10|error|) per iteration; errors are floored at 1.11e-16.
The exponential procedure should reach the floor in a handful of halvings.
"""
import argparse

from chiquad.scenario import ScenarioSpec, exact_value, t_interval_integrand
from chiquad.trapz import convergence_diagnostic, exponential_procedure, simple_procedure


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--nu", type=int, nargs="+", default=[1, 2, 5, 10, 100, 1000])
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--k-max", type=int, default=6)
    p.add_argument("--n-max", type=int, default=513)
    args = p.parse_args()

    for nu in args.nu:
        spec = ScenarioSpec(nu, args.alpha)
        a = t_interval_integrand(spec)
        exact = exact_value(spec)
        simple = simple_procedure(nu, a, 1e-17, n_max=args.n_max, stop_early=False)
        expo = exponential_procedure(nu, a, k_max=args.k_max)
        print(f"nu={nu} alpha={args.alpha}")
        for label, res in (("simple", simple), ("exponential", expo)):
            diag = convergence_diagnostic(res, exact)
            cells = "  ".join(f"{n}:{e:6.2f}" for n, e in diag)
            print(f"  {label:<12} evals={res.evaluations:<5d} {cells}")


if __name__ == "__main__":
    main()
