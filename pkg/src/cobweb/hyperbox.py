"""Discrete F-boxes, maximal-chain coding, the F-nomial partition count, and box tiling."""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from .fsequence import FSequence, f_factorial, fnomial, is_admissible, value
from .poset import GridVertex, cobweb, layer, max_chains
from .relations import complete, compose_nary


@dataclass(frozen=True)
class HyperBox:
    start: int
    end: int
    extents: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.extents)

    @property
    def volume(self) -> int:
        return int(np.prod(self.extents, dtype=object)) if self.extents else 1

    def points(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(1, e + 1) for e in self.extents))

    def to_json(self) -> dict:
        return {"k": self.start, "n": self.end, "extents": list(self.extents)}


def box(F: FSequence, k: int, n: int) -> HyperBox:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    return HyperBox(k, n, tuple(value(F, t) for t in range(k, n + 1)))


def volume(B: HyperBox) -> int:
    return B.volume


def chain_box_bijection(F: FSequence, k: int, n: int) -> dict[tuple[GridVertex, ...], tuple[int, ...]]:
    """Map every maximal chain of the cobweb layer ``k..n`` to its box point."""
    P = layer(cobweb(F, n), k, n)
    B = box(F, k, n)
    mapping = {c: tuple(x.s for x in c) for c in max_chains(P)}
    points = set(mapping.values())
    if len(points) != len(mapping):
        raise AssertionError("chain coding is not injective")
    if len(mapping) != B.volume or not points <= set(B.points()):
        raise AssertionError("chain coding is not onto the box")
    return mapping


# -- chain partition counting ----------------------------------------------------------------


@dataclass
class PartitionReport:
    F: str
    n: int
    k: int
    chain_count: int
    fnomial: Fraction
    block_size: int
    blocks: list[list[tuple]] = field(repr=False)
    admissible: bool
    identity_holds: bool
    partition_ok: bool

    @property
    def ok(self) -> bool:
        return self.identity_holds and self.partition_ok


def verify_theorem1(F: FSequence, n: int, k: int) -> PartitionReport:
    """Count the maximal chains of layer ``k+1..n`` and cut them into F-nomial many blocks.

    Checks ``|C| = fnomial(n, k) * m_F!`` with ``m = n - k`` and builds the
    partition as consecutive chunks of the lexicographic chain enumeration.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    m = n - k
    chains = [()] if k == n else list(max_chains(layer(cobweb(F, n), k + 1, n)))
    c = fnomial(F, n, k)
    size = f_factorial(F, m)
    admissible, _ = is_admissible(F, n)
    identity = Fraction(len(chains)) == c * size
    blocks: list[list[tuple]] = []
    partition_ok = False
    if c.denominator == 1:
        blocks = [chains[i : i + size] for i in range(0, len(chains), size)]
        flat = [x for b in blocks for x in b]
        partition_ok = (
            len(blocks) == c
            and all(len(b) == size for b in blocks)
            and len(set(flat)) == len(flat) == len(chains)
        )
    return PartitionReport(str(F), n, k, len(chains), c, size, blocks, admissible, identity, partition_ok)


# -- tiling ----------------------------------------------------------------------------------


@dataclass(frozen=True)
class SubBox:
    intervals: tuple[tuple[int, int], ...]  # 1-based inclusive per axis

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(b - a + 1 for a, b in self.intervals)

    def cells(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(a, b + 1) for a, b in self.intervals))

    def to_json(self) -> dict:
        return {"intervals": [list(iv) for iv in self.intervals]}


@dataclass
class TilingResult:
    box: HyperBox
    tile_sides: tuple[int, ...]
    tiling: Optional[list[SubBox]]
    count: int
    exhausted: bool
    nodes: int

    @property
    def found(self) -> bool:
        return self.tiling is not None

    def to_json(self) -> dict:
        return {
            "box": self.box.to_json(),
            "tile_sides": list(self.tile_sides),
            "tiles": None if self.tiling is None else [t.to_json() for t in self.tiling],
            "count": self.count,
            "exhausted": self.exhausted,
            "nodes": self.nodes,
        }


def tiling_box(F: FSequence, m: int, n: int) -> tuple[HyperBox, tuple[int, ...]]:
    """The layer box with axes ``(k+1)_F .. n_F`` (``k = n - m``) and the tile sides ``1_F .. m_F``."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    k = n - m
    return box(F, k + 1, n), tuple(value(F, i) for i in range(1, m + 1))


class _Solver:
    def __init__(self, extents: tuple[int, ...], sides: tuple[int, ...]):
        self.extents = extents
        self.strides = [1] * len(extents)
        for i in range(len(extents) - 2, -1, -1):
            self.strides[i] = self.strides[i + 1] * extents[i + 1]
        self.ncells = int(np.prod(extents, dtype=object))
        self.full = (1 << self.ncells) - 1
        self.orientations = sorted(set(itertools.permutations(sides)))
        self._masks: dict[tuple[int, tuple[int, ...]], Optional[int]] = {}
        self.nodes = 0

    def coords(self, idx: int) -> tuple[int, ...]:
        return tuple((idx // s) % e for s, e in zip(self.strides, self.extents))

    def mask(self, idx: int, o: tuple[int, ...]) -> Optional[int]:
        key = (idx, o)
        if key not in self._masks:
            c = self.coords(idx)
            if any(ci + oi > e for ci, oi, e in zip(c, o, self.extents)):
                self._masks[key] = None
            else:
                m = 0
                for off in itertools.product(*(range(oi) for oi in o)):
                    m |= 1 << sum((ci + d) * s for ci, d, s in zip(c, off, self.strides))
                self._masks[key] = m
        return self._masks[key]

    def solutions(self, occ: int = 0, placed: Optional[list] = None) -> Iterator[list]:
        placed = [] if placed is None else placed
        self.nodes += 1
        if occ == self.full:
            yield list(placed)
            return
        free = ~occ & (occ + 1)
        idx = free.bit_length() - 1
        for o in self.orientations:
            m = self.mask(idx, o)
            if m is None or occ & m:
                continue
            placed.append((idx, o))
            yield from self.solutions(occ | m, placed)
            placed.pop()

    def subbox(self, idx: int, o: tuple[int, ...]) -> SubBox:
        c = self.coords(idx)
        return SubBox(tuple((ci + 1, ci + oi) for ci, oi in zip(c, o)))


def _check_divisible(B: HyperBox, sides: tuple[int, ...]) -> None:
    tv = int(np.prod(sides, dtype=object))
    if B.volume % tv:
        raise ValueError(f"volume ratio non-integral, no tiling possible ({B.volume}/{tv})")


def tile(F: FSequence, m: int, n: int) -> TilingResult:
    """First tiling in canonical order, or an exhausted search certifying there is none."""
    B, sides = tiling_box(F, m, n)
    _check_divisible(B, sides)
    solver = _Solver(B.extents, sides)
    for sol in solver.solutions():
        tiles = [solver.subbox(i, o) for i, o in sol]
        return TilingResult(B, sides, tiles, 1, False, solver.nodes)
    return TilingResult(B, sides, None, 0, True, solver.nodes)


def tile_count(F: FSequence, m: int, n: int, cap: int = 1000) -> TilingResult:
    """Count tilings up to ``cap``; ``exhausted`` is true when the count is exact."""
    B, sides = tiling_box(F, m, n)
    _check_divisible(B, sides)
    solver = _Solver(B.extents, sides)
    count, first = 0, None
    exhausted = True
    for sol in solver.solutions():
        if first is None:
            first = [solver.subbox(i, o) for i, o in sol]
        count += 1
        if count >= cap:
            exhausted = False
            break
    return TilingResult(B, sides, first, count, exhausted, solver.nodes)


def verify_tiling(B: HyperBox, sides: tuple[int, ...], tiles: list[SubBox]) -> bool:
    """Independent check: legal shapes, inside the box, every cell covered exactly once."""
    cover = np.zeros(B.extents, dtype=int)
    want = sorted(sides)
    for t in tiles:
        if len(t.intervals) != B.dimension or sorted(t.lengths) != want:
            return False
        for (a, b), e in zip(t.intervals, B.extents):
            if not 1 <= a <= b <= e:
                return False
        cover[tuple(slice(a - 1, b) for a, b in t.intervals)] += 1
    return bool((cover == 1).all())


_GLYPHS = string.ascii_uppercase + string.ascii_lowercase + string.digits


def render_tiling(B: HyperBox, tiles: list[SubBox]) -> str:
    if B.dimension != 2:
        raise ValueError("character rendering needs a 2-axis box")
    grid = [["." for _ in range(B.extents[1])] for _ in range(B.extents[0])]
    for n, t in enumerate(tiles):
        g = _GLYPHS[n % len(_GLYPHS)]
        for i, j in t.cells():
            grid[i - 1][j - 1] = g
    return "\n".join("".join(row) for row in grid) + "\n"


# -- products of consecutive levels ------------------------------------------------------------


@dataclass
class ProductJoinReport:
    k: int
    sizes: tuple[int, int, int]
    tuples: int
    ok: bool


def product_join_check(F: FSequence, k: int) -> ProductJoinReport:
    """Join of the boxes ``Phi_k x Phi_k+1`` and ``Phi_k+1 x Phi_k+2`` against the triple product."""
    levels = [[GridVertex(s, t) for s in range(1, value(F, t) + 1)] for t in (k, k + 1, k + 2)]
    T = compose_nary(complete(levels))
    product = set(itertools.product(*levels))
    sizes = tuple(len(lv) for lv in levels)
    return ProductJoinReport(k, sizes, len(T), T.tuples == product)
