"""
Benchmark tables and figure data for the t-interval test scenario.

Table 1  simple Mori-trapezoid procedure, ε = 1e-17, fixed node budget
Table 2  generalized Gauss-Laguerre
Table 3  inverse-cdf Gauss-Legendre
Table 4  Gauss-Legendre on the Mori window of Table 1

Budgets default to 65 nodes for ν = 1 and 33 otherwise.  Table 2 prints
ν = 300 where Table 3 prints ν = 1000; Table 4 omits ν = 6.  Each table
keeps its own ν set.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from chiquad.baselines import gen_gauss_laguerre, inverse_cdf_legendre, truncated_legendre
from chiquad.gauss import generalized_laguerre_rule
from chiquad.mori import solve_window
from chiquad.scenario import NORMAL_975, ScenarioSpec, exact_value, t_interval_integrand
from chiquad.specfun import chi2_isf, chi2_ppf
from chiquad.trapz import MACHINE_FLOOR, simple_procedure

TABLE_EPSILON = 1e-17
DEFAULT_ALPHAS = (0.10, 0.05, 0.02)
TABLE_NUS = {
    1: (1, 2, 3, 4, 5, 10, 100, 1000),
    2: (1, 2, 3, 4, 5, 6, 10, 100, 300),
    3: (1, 2, 3, 4, 5, 6, 10, 100, 1000),
    4: (1, 2, 3, 4, 5, 10, 100, 1000),
}
TABLE_METHODS = {
    1: "mori_trapezoid_simple",
    2: "gen_gauss_laguerre",
    3: "inverse_cdf_legendre",
    4: "truncated_legendre",
}


def default_budget(nu: int) -> int:
    return 65 if nu == 1 else 33


@dataclass(frozen=True)
class TableJob:
    table_id: int
    alphas: tuple[float, ...] = DEFAULT_ALPHAS
    nus: tuple[int, ...] | None = None
    budget: int | None = None  # overrides the per-ν default when set
    epsilon: float = TABLE_EPSILON
    parallel: bool = True

    def __post_init__(self) -> None:
        if self.table_id not in TABLE_NUS:
            raise ValueError(f"unknown table {self.table_id!r}")

    @property
    def nu_list(self) -> tuple[int, ...]:
        return self.nus if self.nus is not None else TABLE_NUS[self.table_id]

    def budget_for(self, nu: int) -> int:
        return self.budget if self.budget is not None else default_budget(nu)


@dataclass
class Cell:
    table: int
    method: str
    alpha: float
    nu: int
    budget: int
    epsilon: float | None
    evaluations: int | None = None
    value: float | None = None
    exact: float | None = None
    error: float | None = None
    at_floor: bool | None = None
    status: str = "ok"
    message: str = ""


def run_cell(table_id: int, nu: int, alpha: float, budget: int, epsilon: float) -> Cell:
    uses_eps = table_id in (1, 4)
    cell = Cell(table_id, TABLE_METHODS[table_id], alpha, nu, budget, epsilon if uses_eps else None)
    try:
        spec = ScenarioSpec(nu, alpha)
        a = t_interval_integrand(spec)
        if table_id == 1:
            res = simple_procedure(nu, a, epsilon, n_max=budget, stop_early=False)
            value, evals = res.value, res.evaluations
        elif table_id == 2:
            res = gen_gauss_laguerre(nu, a, budget)
            value, evals = res.value, res.evaluations
        elif table_id == 3:
            res = inverse_cdf_legendre(nu, a, budget)
            value, evals = res.value, res.evaluations
        else:
            window = solve_window(nu, 1e-3 * epsilon)
            res = truncated_legendre(nu, a, window, budget)
            value, evals = res.value, res.evaluations
        cell.value = value
        cell.evaluations = evals
        cell.exact = exact_value(spec)
        cell.error = value - cell.exact
        cell.at_floor = abs(cell.error) < MACHINE_FLOOR
    except Exception as exc:  # reported per cell, the table carries on
        cell.status = "failed"
        cell.message = f"{type(exc).__name__}: {exc}"
    return cell


def run_table(job: TableJob) -> list[Cell]:
    """All (α, ν) cells of one table, ordered by α then ν."""
    keys = [(alpha, nu) for alpha in job.alphas for nu in job.nu_list]

    def work(key):
        alpha, nu = key
        return run_cell(job.table_id, nu, alpha, job.budget_for(nu), job.epsilon)

    if job.parallel and len(keys) > 1:
        with ThreadPoolExecutor() as pool:
            return list(pool.map(work, keys))
    return [work(k) for k in keys]


CSV_FIELDS = [f.name for f in Cell.__dataclass_fields__.values()]


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def cells_to_csv(cells: list[Cell]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for c in cells:
        w.writerow([_fmt(getattr(c, k)) for k in CSV_FIELDS])
    return buf.getvalue()


def cells_to_json(cells: list[Cell]) -> str:
    return json.dumps([asdict(c) for c in cells], indent=2)


def sci3(x: float) -> str:
    """Three significant digits, e.g. -1.23e-12."""
    return f"{x:.2e}"


def cells_to_markdown(cells: list[Cell]) -> str:
    if not cells:
        return ""
    alphas = list(dict.fromkeys(c.alpha for c in cells))
    nus = list(dict.fromkeys(c.nu for c in cells))
    lookup = {(c.alpha, c.nu): c for c in cells}
    first = cells[0]
    lines = [
        f"Table {first.table}: {first.method}; approximation error = value - (1 - alpha); "
        "0 means |error| < 1.11e-16",
        "",
        "| | " + " | ".join(f"nu={nu}" for nu in nus) + " |",
        "|---|" + "---|" * len(nus),
    ]
    for alpha in alphas:
        row = []
        for nu in nus:
            c = lookup.get((alpha, nu))
            if c is None:
                row.append("")
            elif c.status != "ok":
                row.append("FAILED")
            elif c.at_floor:
                row.append("0")
            else:
                row.append(sci3(c.error))
        lines.append(f"| alpha={alpha:g} | " + " | ".join(row) + " |")
    budgets = ", ".join(f"nu={c.nu}: {c.evaluations}" for c in cells if c.alpha == alphas[0])
    lines += ["", f"evaluations per cell: {budgets}"]
    return "\n".join(lines) + "\n"


# -- figure data ------------------------------------------------------------

FIGURE_DEFAULTS = {
    1: {"nus": (1, 2), "alphas": (0.05,)},
    3: {"nus": (1, 2, 3, 10), "alphas": DEFAULT_ALPHAS},
    4: {"pairs": ((1, 65), (2, 33))},
    5: {"nus": (1, 3, 10, 100), "alphas": DEFAULT_ALPHAS},
}


def _rows_to_csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def figure_rows(figure_id: int, points: int = 201, nus=None, alphas=None, pairs=None):
    """(header, rows) for one figure."""
    if figure_id == 1:
        alpha = (alphas or FIGURE_DEFAULTS[1]["alphas"])[0]
        curves = [(str(nu), ScenarioSpec(nu, alpha)) for nu in (nus or FIGURE_DEFAULTS[1]["nus"])]
        curves.append(("inf", ScenarioSpec(1, alpha, t_override=_normal_quantile(alpha))))
        xs = np.linspace(0.0, 3.0, points)
        rows = []
        for label, spec in curves:
            a = t_interval_integrand(spec)
            rows += [(label, float(x), a(float(x))) for x in xs]
        return ["nu", "x", "a"], rows
    if figure_id == 3:
        rows = []
        for nu in nus or FIGURE_DEFAULTS[3]["nus"]:
            al = alphas or FIGURE_DEFAULTS[3]["alphas"]
            t_min = min(ScenarioSpec(nu, x).t_crit for x in al)
            y_max = 0.5 * nu * (4.0 / t_min) ** 2
            ys = np.linspace(0.0, y_max, points)
            for alpha in al:
                a = t_interval_integrand(ScenarioSpec(nu, alpha))
                rows += [(nu, alpha, float(y), a(math.sqrt(2.0 * float(y) / nu))) for y in ys]
        return ["nu", "alpha", "y", "d"], rows
    if figure_id == 4:
        rows = []
        for nu, m in pairs or FIGURE_DEFAULTS[4]["pairs"]:
            rule = generalized_laguerre_rule(0.5 * nu - 1.0, m)
            rows += [
                (nu, m, float(y), float(w))
                for y, w in zip(rule.nodes, rule.weights)
                if y <= 50.0
            ]
        return ["nu", "m", "y", "w"], rows
    if figure_id == 5:
        rows = []
        zs = np.linspace(-1.0, 1.0, points)
        for nu in nus or FIGURE_DEFAULTS[5]["nus"]:
            for alpha in alphas or FIGURE_DEFAULTS[5]["alphas"]:
                a = t_interval_integrand(ScenarioSpec(nu, alpha))
                for z in zs:
                    z = float(z)
                    if z <= -1.0:
                        b = 0.0
                    elif z >= 1.0:
                        b = 0.5
                    else:
                        p, q = 0.5 * (1.0 + z), 0.5 * (1.0 - z)
                        t = chi2_ppf(nu, p) if p <= 0.5 else chi2_isf(nu, q)
                        b = 0.5 * a(math.sqrt(t / nu))
                    rows.append((nu, alpha, z, b))
        return ["nu", "alpha", "z", "b"], rows
    raise ValueError(f"unknown figure {figure_id!r}")


def _normal_quantile(alpha: float) -> float:
    if alpha == 0.05:
        return NORMAL_975
    from statistics import NormalDist

    return NormalDist().inv_cdf(1.0 - alpha / 2.0)


def emit_figure_data(figure_id: int, points: int = 201, **kwargs) -> str:
    header, rows = figure_rows(figure_id, points, **kwargs)
    return _rows_to_csv(header, rows)
