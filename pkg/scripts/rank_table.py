#!/usr/bin/env python3
"""Print total ranks of the plus-flavor groups over a small parameter table.

Each cell is computed by both pipelines; a cell is printed only when they
agree, so this doubles as a quick smoke run.

Usage: python3 scripts/rank_table.py [G_MAX] [N_MAX]
"""

import sys

from mtfloer.closed_form import theorem_answer
from mtfloer.knot_model import oracle_hfplus


def main() -> None:
    g_max = int(sys.argv[1]) if len(sys.argv) > 1 else 4
    n_max = int(sys.argv[2]) if len(sys.argv) > 2 else 3
    n_values = [n for n in range(-n_max, n_max + 1) if n != 0]
    header = "  g  k | " + " ".join(f"n={n:>3}" for n in n_values)
    print(header)
    print("-" * len(header))
    for g in range(2, g_max + 1):
        for k in range(1, g):
            cells = []
            for n in n_values:
                oracle = oracle_hfplus(g, n, k).group
                closed = theorem_answer(g, n, k)
                if oracle != closed:
                    raise SystemExit(f"pipelines disagree at g={g} n={n} k={k}")
                cells.append(f"{oracle.total_rank():>5}")
            print(f"{g:>3} {k:>2} | " + " ".join(cells))


if __name__ == "__main__":
    main()
