"""
Command-line harness: benchmark tables, figure data and single integrations.

    chiquad table 1 --format md
    chiquad figure 4 --out fig4.csv
    chiquad integrate mori-trapezoid --nu 2 --integrand t-interval:0.05 --epsilon 1e-17

Exit codes: 0 success, 1 computation failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from typing import Callable

from chiquad.baselines import gen_gauss_laguerre, inverse_cdf_legendre, truncated_legendre
from chiquad.mori import solve_window
from chiquad.scenario import ScenarioSpec, exact_value, t_interval_integrand
from chiquad.tables import (
    DEFAULT_ALPHAS,
    TABLE_EPSILON,
    TableJob,
    cells_to_csv,
    cells_to_json,
    cells_to_markdown,
    default_budget,
    emit_figure_data,
    run_table,
)
from chiquad.trapz import Integrand, exponential_procedure, simple_procedure

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


# -- integrand registry -----------------------------------------------------


@dataclass(frozen=True)
class BuiltIntegrand:
    integrand: Integrand
    exact: float | None  # known value of ∫ a f_ν, if any


IntegrandFactory = Callable[[int, "str | None"], BuiltIntegrand]
INTEGRANDS: dict[str, IntegrandFactory] = {}


def register_integrand(name: str):
    """Decorator adding a factory `(nu, param) -> BuiltIntegrand` to the registry."""

    def deco(factory: IntegrandFactory) -> IntegrandFactory:
        INTEGRANDS[name] = factory
        return factory

    return deco


@register_integrand("t-interval")
def _t_interval(nu: int, param: str | None) -> BuiltIntegrand:
    spec = ScenarioSpec(nu, float(param) if param else 0.05)
    return BuiltIntegrand(t_interval_integrand(spec), exact_value(spec))


@register_integrand("constant")
def _constant(nu: int, param: str | None) -> BuiltIntegrand:
    c = float(param) if param else 1.0
    return BuiltIntegrand(Integrand(lambda x: c, abs(c), f"constant({c})"), c)


@register_integrand("exp-decay")
def _exp_decay(nu: int, param: str | None) -> BuiltIntegrand:
    # a(x) = exp(-r x); no closed form for general ν
    r = float(param) if param else 1.0
    if r < 0:
        raise ValueError("exp-decay rate must be nonnegative")
    return BuiltIntegrand(Integrand(lambda x: math.exp(-r * x), 1.0, f"exp-decay({r})"), None)


def build_integrand(text: str, nu: int) -> BuiltIntegrand:
    name, _, param = text.partition(":")
    if name not in INTEGRANDS:
        raise KeyError(name)
    return INTEGRANDS[name](nu, param or None)


METHODS = (
    "mori-trapezoid",
    "mori-exponential",
    "gauss-laguerre",
    "inverse-cdf",
    "truncated-legendre",
)


def integrate(method: str, nu: int, built: BuiltIntegrand, epsilon: float, budget: int | None) -> dict:
    a = built.integrand
    report: dict = {"method": method, "nu": nu, "integrand": a.name, "epsilon": epsilon}
    if method == "mori-trapezoid":
        res = simple_procedure(nu, a, epsilon, n_max=budget or 1025)
        report.update(
            value=res.value,
            evaluations=res.evaluations,
            est_error=res.est_discretization_error,
            trimming_bound=res.trimming_bound,
            converged=res.converged,
            history=[it._asdict() for it in res.history],
        )
    elif method == "mori-exponential":
        k_max = 6
        if budget is not None:
            k_max = 0
            while (4 + 2 * (k_max + 1)) * 2 ** (k_max + 1) <= budget:
                k_max += 1
        res = exponential_procedure(nu, a, k_max=k_max, epsilon=epsilon)
        report.update(
            value=res.value,
            evaluations=res.evaluations,
            est_error=res.est_discretization_error,
            trimming_bound=res.trimming_bound,
            converged=res.converged,
            history=[it._asdict() for it in res.history],
        )
    else:
        m = budget or default_budget(nu)
        if method == "gauss-laguerre":
            res = gen_gauss_laguerre(nu, a, m)
        elif method == "inverse-cdf":
            res = inverse_cdf_legendre(nu, a, m)
        else:
            res = truncated_legendre(nu, a, solve_window(nu, 1e-3 * epsilon), m)
        report.update(value=res.value, evaluations=res.evaluations, est_error=None, history=[])
    if built.exact is not None:
        report["exact"] = built.exact
        report["error"] = report["value"] - built.exact
    return report


def format_report(report: dict) -> str:
    lines = [f"{k}: {v}" for k, v in report.items() if k != "history"]
    if report["history"]:
        lines.append("history:")
        lines += [f"  n={it['n']:<6d} h={it['h']:.6g}  value={it['value']!r}" for it in report["history"]]
    return "\n".join(lines) + "\n"


# -- argument parsing -------------------------------------------------------


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(s) for s in text.split(",") if s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(s) for s in text.split(",") if s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("degrees of freedom must be positive")
    return vals


TABLE_HELP = (
    "Reproduce a benchmark table.  Default nu sets follow each table's own "
    "header: Table 2 includes nu=300 where Table 3 includes nu=1000, and "
    "Table 4 has no nu=6 column."
)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chiquad", description="Chi-distribution expectations by Mori-trapezoid quadrature.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="reproduce Table 1-4", description=TABLE_HELP)
    t.add_argument("table_id", type=int, choices=(1, 2, 3, 4))
    t.add_argument("--nu", type=_int_list, help="comma-separated nu values")
    t.add_argument("--alpha", type=_float_list, default=DEFAULT_ALPHAS)
    t.add_argument("--epsilon", type=float, default=TABLE_EPSILON, help="Tables 1 and 4 only")
    t.add_argument("--budget", type=int, help="node budget for every nu (default 65 for nu=1, else 33)")
    t.add_argument("--format", choices=("csv", "md", "json"), default="csv")
    t.add_argument("--out")
    t.add_argument("--serial", action="store_true", help="compute cells one at a time")

    f = sub.add_parser("figure", help="emit figure data as CSV")
    f.add_argument("figure_id", type=int, choices=(1, 3, 4, 5))
    f.add_argument("--nu", type=_int_list)
    f.add_argument("--alpha", type=_float_list)
    f.add_argument("--points", type=int, default=201)
    f.add_argument("--format", choices=("csv",), default="csv")
    f.add_argument("--out")

    i = sub.add_parser("integrate", help="integrate one built-in integrand")
    i.add_argument("method", choices=METHODS)
    i.add_argument("--nu", type=int, required=True)
    i.add_argument(
        "--integrand",
        default="t-interval:0.05",
        help=f"NAME[:PARAM], NAME one of {', '.join(sorted(INTEGRANDS))}",
    )
    i.add_argument("--epsilon", type=float, default=1e-12)
    i.add_argument("--budget", type=int, help="largest node count / Gauss rule size")
    i.add_argument("--format", choices=("text", "json"), default="text")
    i.add_argument("--json", action="store_true", help="same as --format json")
    i.add_argument("--out")
    return p


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # SystemExit(2) on usage errors

    if args.command == "table":
        if args.budget is not None and args.budget < 1:
            parser.error("--budget must be positive")
        job = TableJob(
            args.table_id,
            alphas=args.alpha,
            nus=args.nu,
            budget=args.budget,
            epsilon=args.epsilon,
            parallel=not args.serial,
        )
        cells = run_table(job)
        render = {"csv": cells_to_csv, "md": cells_to_markdown, "json": cells_to_json}[args.format]
        _write(render(cells), args.out)
        failed = [c for c in cells if c.status != "ok"]
        for c in failed:
            print(f"cell alpha={c.alpha} nu={c.nu} failed: {c.message}", file=sys.stderr)
        return EXIT_FAILURE if failed else EXIT_OK

    if args.command == "figure":
        kwargs = {}
        if args.nu:
            kwargs["nus"] = args.nu
        if args.alpha:
            kwargs["alphas"] = args.alpha
        if args.figure_id == 4 and args.nu:
            kwargs = {"pairs": tuple((nu, default_budget(nu)) for nu in args.nu)}
        try:
            _write(emit_figure_data(args.figure_id, args.points, **kwargs), args.out)
        except (ValueError, ArithmeticError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAILURE
        return EXIT_OK

    # integrate
    if args.nu < 1:
        parser.error("--nu must be a positive integer")
    try:
        built = build_integrand(args.integrand, args.nu)
    except KeyError as exc:
        parser.error(f"unknown integrand {exc.args[0]!r}; choose from {', '.join(sorted(INTEGRANDS))}")
    except ValueError as exc:
        parser.error(f"bad integrand parameter: {exc}")
    try:
        report = integrate(args.method, args.nu, built, args.epsilon, args.budget)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    if args.json or args.format == "json":
        _write(json.dumps(report, indent=2) + "\n", args.out)
    else:
        _write(format_report(report), args.out)
    return EXIT_OK


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
