"""Print level-indexed Moebius coefficients, Whitney numbers and characteristic polynomials.

The rank-only coefficients are compared with the inverted zeta matrix, and the
rising-factorial coefficient is printed alongside so the off-by-one factor is visible.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from cobweb import fsequence as fs
from cobweb.incidence import (
    char_poly,
    char_poly_bruteforce,
    coding_coefficient_rising,
    coding_matrix,
    mobius_oracle,
    whitney_first,
    whitney_first_bruteforce,
    whitney_first_rising,
)
from cobweb.poset import cobweb


@dataclass
class TableConfig:
    levels: int = 5
    charpoly_up_to: int = 4


SEQUENCES = {
    "natural": fs.natural(),
    "fibonacci": fs.fibonacci(),
    "gaussian q=2": fs.gaussian(2),
    "constant 1": fs.constant(1),
    "constant 2": fs.constant(2),
}


def block_table(F: fs.FSequence, n: int) -> list[str]:
    C = coding_matrix(F, n)
    P = cobweb(F, n)
    M = mobius_oracle(P)
    first = {t: P.index(P.level(t)[0]) for t in P.levels}
    lines = []
    for r in range(1, n + 1):
        cells = []
        for s in range(1, n + 1):
            if s < r:
                cells.append(".")
                continue
            oracle = int(M[first[r], first[s]])
            mark = "" if oracle == C[r, s] else "!"
            cells.append(f"{C[r, s]}{mark}/{coding_coefficient_rising(F, r, s)}")
        lines.append("  ".join(c.rjust(9) for c in cells))
    return lines


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--levels", type=int, default=TableConfig.levels)
    ap.add_argument("--charpoly-up-to", type=int, default=TableConfig.charpoly_up_to)
    cfg = TableConfig(**vars(ap.parse_args()))
    for name, F in SEQUENCES.items():
        print(f"== {name}: {F.prefix(cfg.levels)}")
        print("   mu(r,s)/rising   ('!' marks disagreement with the inverted zeta)")
        for line in block_table(F, cfg.levels):
            print("   " + line)
        n = cfg.charpoly_up_to
        w, wb = [whitney_first(F, r) for r in range(n + 1)], whitney_first_bruteforce(F, n)
        print(f"   whitney first kind {w} (brute force {wb}); rising rank-1 term {whitney_first_rising(F, 1)}")
        for k in range(1, n + 1):
            p, q = char_poly(F, k), char_poly_bruteforce(F, k)
            print(f"   chi_{k}(t) = {p}" + ("" if p == q else f"   MISMATCH brute force {q}"))
        print()


if __name__ == "__main__":
    main()
