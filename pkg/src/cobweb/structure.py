"""Structural predicates and linear-extension machinery.

Exhaustive routines enumerate every linear extension, so they are capped at
``EXTENSION_CAP`` vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .fsequence import FSequence
from .poset import FinitePoset, as_poset, cobweb

EXTENSION_CAP = 9


def n_poset() -> FinitePoset:
    """The N: ``a < c``, ``b < c``, ``b < d``."""
    return FinitePoset(("a", "b", "c", "d"), frozenset({("a", "c"), ("b", "c"), ("b", "d")}))


def find_n(P) -> Optional[tuple]:
    """A cover-preserving N ``(a, b, c, d)`` with ``a<.c``, ``b<.c``, ``b<.d`` and ``a`` not below ``d``."""
    P = as_poset(P)
    for c in P.vertices:
        lower = P.lower_covers(c)
        for b in lower:
            for d in P.upper_covers(b):
                if d == c:
                    continue
                for a in lower:
                    if a != b and not P.leq(a, d):
                        return a, b, c, d
    return None


def is_n_free(P) -> tuple[bool, Optional[tuple]]:
    w = find_n(P)
    return w is None, w


# -- linear extensions ----------------------------------------------------------------------


def _check_cap(P: FinitePoset, cap: int) -> None:
    if len(P) > cap:
        raise ValueError(f"exhaustive enumeration cap: {len(P)} vertices > {cap}")


def linear_extensions(P, cap: int = EXTENSION_CAP) -> Iterator[tuple]:
    P = as_poset(P)
    _check_cap(P, cap)
    indeg = {v: len(P.lower_covers(v)) for v in P.vertices}
    out: list = []

    def walk():
        if len(out) == len(P):
            yield tuple(out)
            return
        for v in P.vertices:
            if indeg[v] == 0:
                indeg[v] = -1
                for w in P.upper_covers(v):
                    indeg[w] -= 1
                out.append(v)
                yield from walk()
                out.pop()
                for w in P.upper_covers(v):
                    indeg[w] += 1
                indeg[v] = 0

    yield from walk()


def is_linear_extension(P, L: Sequence) -> bool:
    P = as_poset(P)
    if len(L) != len(P) or set(L) != set(P.vertices):
        return False
    pos = {v: i for i, v in enumerate(L)}
    return all(pos[a] < pos[b] for a, b in P.covers)


def greedy_extensions(P, cap: int = EXTENSION_CAP) -> set[tuple]:
    """Every output of the greedy minimal-element procedure.

    After ``x_i`` the next element must be a minimal remaining element above
    ``x_i`` when one exists, otherwise any minimal remaining element.
    """
    P = as_poset(P)
    _check_cap(P, cap)
    indeg = {v: len(P.lower_covers(v)) for v in P.vertices}
    out: list = []
    found: set[tuple] = set()

    def walk():
        if len(out) == len(P):
            found.add(tuple(out))
            return
        avail = [v for v in P.vertices if indeg[v] == 0]
        if out:
            above = [v for v in avail if P.less(out[-1], v)]
            if above:
                avail = above
        for v in avail:
            indeg[v] = -1
            for w in P.upper_covers(v):
                indeg[w] -= 1
            out.append(v)
            walk()
            out.pop()
            for w in P.upper_covers(v):
                indeg[w] += 1
            indeg[v] = 0

    walk()
    return found


def jumps(P, L: Sequence) -> int:
    """Consecutive pairs of ``L`` that are not cover pairs of ``P``."""
    P = as_poset(P)
    return sum(1 for a, b in zip(L, L[1:]) if not P.covered_by(a, b))


def jump_number(P, L: Optional[Sequence] = None, cap: int = EXTENSION_CAP) -> int:
    """``s(L, P)`` for a given extension, else the minimum over all extensions."""
    if L is not None:
        if not is_linear_extension(P, L):
            raise ValueError("not a linear extension")
        return jumps(P, L)
    return min(jumps(P, L) for L in linear_extensions(P, cap))


def optimal_extensions(P, cap: int = EXTENSION_CAP) -> set[tuple]:
    exts = list(linear_extensions(P, cap))
    scores = [jumps(P, L) for L in exts]
    best = min(scores)
    return {L for L, s in zip(exts, scores) if s == best}


def is_greedy_poset(P, cap: int = EXTENSION_CAP) -> bool:
    return greedy_extensions(P, cap) <= optimal_extensions(P, cap)


def is_reversible(P, cap: int = EXTENSION_CAP) -> bool:
    return greedy_extensions(P, cap) == optimal_extensions(P, cap)


@dataclass
class StructureReport:
    vertices: int
    n_free: bool
    n_witness: Optional[tuple]
    jump_number: Optional[int]
    greedy_extensions: Optional[int]
    optimal_extensions: Optional[int]
    greedy: Optional[bool]
    reversible: Optional[bool]


def structure_report(P, cap: int = EXTENSION_CAP) -> StructureReport:
    P = as_poset(P)
    free, w = is_n_free(P)
    if len(P) > cap:
        return StructureReport(len(P), free, w, None, None, None, None, None)
    G, O = greedy_extensions(P, cap), optimal_extensions(P, cap)
    s = jumps(P, next(iter(O)))
    return StructureReport(len(P), free, w, s, len(G), len(O), G <= O, G == O)


# -- realizers ------------------------------------------------------------------------------


def cobweb_realizer(F: FSequence, n: int) -> tuple[tuple, tuple]:
    """Level-major orders, left-to-right and right-to-left within each level.

    For a chain both orders coincide (dimension 1).
    """
    P = cobweb(F, n)
    L1 = tuple(P.vertices())
    L2 = tuple(v for t in P.levels for v in reversed(P.level(t)))
    return L1, L2


def verify_realizer(P, extensions: Sequence[Sequence]) -> bool:
    """True iff ``x < y`` in P exactly when x precedes y in every extension."""
    Q = as_poset(P)
    if not extensions:
        raise ValueError("empty realizer")
    for L in extensions:
        if not is_linear_extension(Q, L):
            raise ValueError(f"not a linear extension: {L}")
    positions = [{v: i for i, v in enumerate(L)} for L in extensions]
    for x in Q.vertices:
        for y in Q.vertices:
            if x == y:
                continue
            before_all = all(p[x] < p[y] for p in positions)
            if before_all != Q.less(x, y):
                return False
    return True
