"""Reproduce the four benchmark tables and compare each cell to the published error.

    python3 scripts/reproduce_tables.py            # all tables
    python3 scripts/reproduce_tables.py 1 4        # a subset

Prints the Markdown table, then per cell the ratio ours/published.
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from reference_tables import TABLE1, TABLE2, TABLE3, TABLE4  # noqa: E402

from chiquad.tables import TableJob, cells_to_markdown, run_table  # noqa: E402

REFERENCE = {1: TABLE1, 2: TABLE2, 3: TABLE3, 4: TABLE4}


def compare(cells, ref):
    lines = []
    for c in cells:
        r = ref[(c.alpha, c.nu)]
        if c.status != "ok":
            lines.append(f"  alpha={c.alpha:<5} nu={c.nu:<5} FAILED {c.message}")
            continue
        ratio = "   -  " if r == 0.0 else f"{c.error / r:6.2f}"
        lines.append(f"  alpha={c.alpha:<5} nu={c.nu:<5} ours={c.error: .3e}  published={r: .2e}  ratio={ratio}")
    return "\n".join(lines)


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("tables", nargs="*", type=int, default=[1, 2, 3, 4])
    p.add_argument("--epsilon", type=float, default=1e-17, help="window accuracy for Tables 1 and 4")
    args = p.parse_args()
    for tid in args.tables:
        cells = run_table(TableJob(tid, epsilon=args.epsilon))
        print(cells_to_markdown(cells))
        print(compare(cells, REFERENCE[tid]))
        print()


if __name__ == "__main__":
    main()
