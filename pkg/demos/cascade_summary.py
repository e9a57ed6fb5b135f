"""Search every catalog model for type-I projection chains and print them.

    python3 demos/cascade_summary.py [n_max]
"""
import sys

from dpcascade.cascade import cascade_search
from dpcascade.catalog import builtin_catalog


def main(n_max=2):
    cat = builtin_catalog()
    for group in ("main", "rs"):
        chains, edges = cascade_search(cat, n_max=n_max, group=group)
        print(f"[{group}] chains for n <= {n_max}:")
        for c in chains:
            print("  " + c.describe())
        rejected = [s.describe() for rows in edges.values() for s, _, ok in rows if not ok]
        print(f"  {len(rejected)} rejected steps")
        for line in rejected:
            print("    " + line)


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 2)
