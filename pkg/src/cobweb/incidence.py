"""Zeta and Moebius matrices of graded posets, closed cobweb formulas, Whitney numbers.

Matrices are numpy arrays of Python ints (``dtype=object``) so products are exact.
Rows and columns follow the natural (level-major) labeling.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .fsequence import FSequence, upper_function_factorial, value
from .poset import FinitePoset, GradedPoset, GridVertex, adjacency_matrix, cobweb


def int_matrix(rows) -> np.ndarray:
    a = np.array(rows, dtype=object)
    return a


def identity(n: int) -> np.ndarray:
    I = np.zeros((n, n), dtype=object)
    for i in range(n):
        I[i, i] = 1
    return I


def _adjacency(P: GradedPoset | FinitePoset) -> np.ndarray:
    if isinstance(P, GradedPoset):
        return adjacency_matrix(P)
    return P.adjacency_matrix(P.natural_order())


# -- zeta ----------------------------------------------------------------------------


def boolean_closure(A: np.ndarray) -> list[int]:
    """Reflexive-transitive closure by repeated Boolean squaring of ``I or A``.

    Rows are returned as int bitmasks (bit ``j`` of row ``i`` is entry ``(i, j)``).
    """
    n = len(A)
    rows = [(1 << i) | sum(1 << int(j) for j in np.nonzero(A[i])[0]) for i in range(n)]
    while True:
        squared = []
        for r in rows:
            acc = 0
            m = r
            while m:
                low = m & -m
                acc |= rows[low.bit_length() - 1]
                m ^= low
            squared.append(acc)
        if squared == rows:
            return rows
        rows = squared


def zeta_closure(P: GradedPoset | FinitePoset) -> np.ndarray:
    rows = boolean_closure(_adjacency(P))
    n = len(rows)
    Z = np.zeros((n, n), dtype=object)
    for i, r in enumerate(rows):
        for j in range(n):
            Z[i, j] = (r >> j) & 1
    return Z


def level_boundaries(F: FSequence, n: int) -> list[int]:
    """``S(0..n)`` with ``S(0) = 0`` and ``S(m) = 1_F + ... + m_F``."""
    S = [0]
    for k in range(1, n + 1):
        S.append(S[-1] + value(F, k))
    return S


def zeta_cobweb_closed(F: FSequence, n: int, x: int, y: int, S: Sequence[int] | None = None) -> int:
    """Bracket-sum form of the cobweb zeta function on 1-based natural labels."""
    S = level_boundaries(F, n) if S is None else S
    N = S[-1]
    if not (1 <= x <= N and 1 <= y <= N):
        raise ValueError(f"labels out of range 1..{N}: ({x}, {y})")
    correction = sum(1 for m in range(n) if x > S[m] and y <= S[m + 1])
    return int(x <= y) - int(x < y) * correction


def zeta_cobweb_matrix(F: FSequence, n: int) -> np.ndarray:
    S = level_boundaries(F, n)
    N = S[-1]
    return int_matrix([[zeta_cobweb_closed(F, n, x, y, S) for y in range(1, N + 1)] for x in range(1, N + 1)])


# -- Moebius -------------------------------------------------------------------------


def invert_unit_upper(Z: np.ndarray) -> np.ndarray:
    """Exact inverse of a unit upper-triangular integer matrix by back-substitution."""
    n = len(Z)
    z = [[int(v) for v in row] for row in Z]
    for i in range(n):
        if z[i][i] != 1 or any(z[i][j] for j in range(i)):
            raise ValueError("matrix is not unit upper-triangular")
    mu = [[0] * n for _ in range(n)]
    for i in range(n):
        row = mu[i]
        row[i] = 1
        for j in range(i + 1, n):
            acc = 0
            for k in range(i, j):
                if z[k][j]:
                    acc += row[k]
            row[j] = -acc
    return int_matrix(mu)


def mobius_oracle(P: GradedPoset | FinitePoset) -> np.ndarray:
    return invert_unit_upper(zeta_closure(P))


def mobius_cobweb(F: FSequence, r: int, s: int) -> int:
    """Rank-only cobweb Moebius value ``(-1)^(s-r) * prod_{r<k<s} (k_F - 1)``."""
    if r > s:
        raise ValueError(f"need r <= s, got r={r}, s={s}")
    if r == s:
        return 1
    out = (-1) ** (s - r)
    for k in range(r + 1, s):
        out *= value(F, k) - 1
    return out


def mobius_grid(F: FSequence, x: GridVertex, y: GridVertex) -> int:
    """Cobweb Moebius function in grid coordinates ``<s,t>``, ``<u,v>``."""
    (s, t), (u, v) = x, y
    for a, lvl in ((s, t), (u, v)):
        if lvl < 0 or not 1 <= a <= value(F, lvl):
            raise ValueError(f"invalid grid coordinates <{a},{lvl}>")
    out = int(s == u and t == v) - int(t + 1 == v)
    if t + 1 < v:
        prod = 1
        for i in range(t + 1, v):
            prod *= value(F, i) - 1
        out += (-1) ** (v - t) * prod
    return out


def coding_coefficient_rising(F: FSequence, r: int, s: int) -> int:
    """Rising-factorial variant ``(-1)^(s-r) [(r+1)_F - 1]^(rising s-r)``.

    It carries one extra factor ``(s_F - 1)`` compared with ``mobius_cobweb`` and
    does not invert zeta (on the chain it gives 0 at covers instead of -1).
    """
    if r > s:
        return 0
    return (-1) ** (s - r) * upper_function_factorial(lambda x: x - 1, F, r + 1, s - r)


@dataclass(frozen=True)
class CodingMatrix:
    """Level-indexed Moebius coefficients ``c[r][s]`` for ``start <= r <= s <= up_to``."""

    start: int
    up_to: int
    coeffs: tuple[tuple[int, ...], ...]

    def __getitem__(self, rs: tuple[int, int]) -> int:
        r, s = rs
        if r > s:
            return 0
        return self.coeffs[r - self.start][s - self.start]

    def expand(self, F: FSequence) -> np.ndarray:
        """Blow each coefficient up to the block ``c[r][s] * ones(r_F, s_F)``."""
        sizes = [value(F, k) for k in range(self.start, self.up_to + 1)]
        offs = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
        N = int(offs[-1])
        M = np.zeros((N, N), dtype=object)
        for i, r in enumerate(range(self.start, self.up_to + 1)):
            for j, s in enumerate(range(self.start, self.up_to + 1)):
                if s < r:
                    continue
                if r == s:
                    for d in range(sizes[i]):
                        M[offs[i] + d, offs[i] + d] = 1
                else:
                    M[offs[i] : offs[i + 1], offs[j] : offs[j + 1]] = self[r, s]
        return M


def coding_matrix(F: FSequence, up_to: int, start: int = 1) -> CodingMatrix:
    if up_to < start:
        raise ValueError("up_to must be at least the start level")
    rng = range(start, up_to + 1)
    return CodingMatrix(start, up_to, tuple(tuple(mobius_cobweb(F, r, s) if s >= r else 0 for s in rng) for r in rng))


# -- Whitney numbers and characteristic polynomials ----------------------------------------


def _bottomed(F: FSequence) -> FSequence:
    if F.zeroth not in (None, 1):
        raise ValueError(f"missing bottom level: 0_F = {F.zeroth}, a unique bottom needs 0_F = 1")
    return F.with_bottom()


def whitney_second(F: FSequence, r: int) -> int:
    return value(_bottomed(F), r)


def whitney_first(F: FSequence, r: int) -> int:
    F = _bottomed(F)
    return value(F, r) * mobius_cobweb(F, 0, r)


def whitney_first_rising(F: FSequence, r: int) -> int:
    """``r_F (-1)^r (1_F - 1)^(rising r)``; disagrees with ``whitney_first`` at rank 1 unless 1_F = 2."""
    F = _bottomed(F)
    return value(F, r) * coding_coefficient_rising(F, 0, r)


def whitney_first_bruteforce(F: FSequence, n: int) -> list[int]:
    """``w_r = sum of mu(0, x)`` over rank ``r`` from the inverted zeta matrix of ``Pi_n`` with a bottom."""
    P = cobweb(_bottomed(F), n, start=0)
    mu = mobius_oracle(P)
    out, col = [], 0
    for size in P.sizes:
        out.append(int(sum(mu[0, col : col + size])))
        col += size
    return out


@dataclass(frozen=True)
class Polynomial:
    """Integer polynomial, coefficients from the leading term down."""

    coeffs: tuple[int, ...]
    var: str = "t"

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        acc = 0
        for c in self.coeffs:
            acc = acc * t + c
        return acc

    def __str__(self) -> str:
        terms = []
        n = self.degree
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            p = n - i
            mono = "" if p == 0 else (self.var if p == 1 else f"{self.var}^{p}")
            mag = abs(c)
            body = mono if mag == 1 and mono else (f"{mag}{mono}" if mono else str(mag))
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def char_poly(F: FSequence, n: int) -> Polynomial:
    return Polynomial(tuple(whitney_first(F, k) for k in range(n + 1)))


def char_poly_bruteforce(F: FSequence, n: int) -> Polynomial:
    return Polynomial(tuple(whitney_first_bruteforce(F, n)))


# -- exports ------------------------------------------------------------------------------


def matrix_to_csv(M: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in M:
        w.writerow([int(v) for v in row])
    return buf.getvalue()


def matrix_from_csv(text: str) -> np.ndarray:
    rows = [[int(v) for v in row] for row in csv.reader(io.StringIO(text)) if row]
    return int_matrix(rows)


def matrix_to_json(M: np.ndarray) -> str:
    return json.dumps([[int(v) for v in row] for row in M])


def render_scala(Z: np.ndarray) -> str:
    """Staircase rendering of a zeta matrix.

    Each row starts at the diagonal with ``1``; ``0`` marks an incomparable
    higher label and ``-`` a comparable one.  Cells below the diagonal are blank.
    """
    n = len(Z)
    lines = []
    for i in range(n):
        cells = [" "] * i + ["1"] + ["-" if Z[i, j] else "0" for j in range(i + 1, n)]
        lines.append(" ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def scala_zero_runs(text: str) -> list[int]:
    """Length of the run of zeros right after the diagonal ``1`` in each row."""
    runs = []
    for line in text.splitlines():
        cells = line.split()
        run = 0
        for c in cells[1:]:
            if c != "0":
                break
            run += 1
        runs.append(run)
    return runs
