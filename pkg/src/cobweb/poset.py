"""Finite graded posets stored as chains of bipartite biadjacency matrices.

Two carriers live here:

* ``GradedPoset``: levels ``base .. base+L-1`` with covers only between
  consecutive levels, vertices addressed by grid coordinates ``<s, t>``.
* ``FinitePoset``: an arbitrary finite poset given by its Hasse diagram, used
  where sums produce non-graded results.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Hashable, Iterable, Iterator, NamedTuple, Sequence

import networkx as nx
import numpy as np

from .fsequence import FSequence, value


class GridVertex(NamedTuple):
    s: int  # position within the level, 1-based
    t: int  # level index

    def __str__(self) -> str:
        return f"<{self.s},{self.t}>"


def _bool_matrix(m, shape: tuple[int, int]) -> np.ndarray:
    a = np.asarray(m, dtype=bool)
    if a.size == 0:
        a = a.reshape(shape)
    if a.shape != shape:
        raise ValueError(f"biadjacency shape error: expected {shape}, got {a.shape}")
    a = a.copy()
    a.flags.writeable = False
    return a


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, eq=False)
class GradedPoset:
    sizes: tuple[int, ...]
    biadjacency: tuple[np.ndarray, ...]
    base: int = 1

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise ValueError("level sizes must be positive and nonempty")
        mats = tuple(self.biadjacency)
        if len(mats) != len(sizes) - 1:
            raise ValueError(
                f"biadjacency shape error: {len(sizes)} levels need {len(sizes) - 1} matrices, got {len(mats)}"
            )
        mats = tuple(_bool_matrix(m, (sizes[i], sizes[i + 1])) for i, m in enumerate(mats))
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "biadjacency", mats)

    # -- basic shape ---------------------------------------------------------

    @property
    def height(self) -> int:
        return len(self.sizes) - 1

    @property
    def levels(self) -> range:
        return range(self.base, self.base + len(self.sizes))

    @property
    def top(self) -> int:
        return self.base + len(self.sizes) - 1

    def size(self, t: int) -> int:
        return self.sizes[t - self.base]

    def level(self, t: int) -> list[GridVertex]:
        return [GridVertex(s, t) for s in range(1, self.size(t) + 1)]

    def matrix(self, t: int) -> np.ndarray:
        """Biadjacency between level ``t`` and level ``t+1``."""
        return self.biadjacency[t - self.base]

    def __len__(self) -> int:
        return sum(self.sizes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedPoset):
            return NotImplemented
        return (
            self.sizes == other.sizes
            and self.base == other.base
            and all(np.array_equal(a, b) for a, b in zip(self.biadjacency, other.biadjacency))
        )

    def __hash__(self) -> int:
        return hash((self.sizes, self.base, tuple(m.tobytes() for m in self.biadjacency)))

    def __repr__(self) -> str:
        kind = "cobweb" if self.is_cobweb else "graded"
        return f"GradedPoset({kind}, sizes={self.sizes}, base={self.base})"

    @cached_property
    def is_cobweb(self) -> bool:
        return all(m.all() for m in self.biadjacency)

    # -- vertices, covers, labels --------------------------------------------

    @cached_property
    def _offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for s in self.sizes:
            out.append(acc)
            acc += s
        return tuple(out)

    def vertices(self) -> list[GridVertex]:
        return [v for t in self.levels for v in self.level(t)]

    def contains(self, x: GridVertex) -> bool:
        return self.base <= x.t <= self.top and 1 <= x.s <= self.size(x.t)

    def _check(self, x: GridVertex) -> None:
        if not self.contains(x):
            raise ValueError(f"invalid vertex {x} for poset with sizes {self.sizes}")

    def index(self, x: GridVertex) -> int:
        """0-based position of ``x`` in the level-major order."""
        self._check(x)
        return self._offsets[x.t - self.base] + x.s - 1

    def covers(self) -> list[tuple[GridVertex, GridVertex]]:
        out = []
        for t in self.levels[:-1]:
            for i, j in zip(*np.nonzero(self.matrix(t))):
                out.append((GridVertex(int(i) + 1, t), GridVertex(int(j) + 1, t + 1)))
        return out

    def edge_count(self) -> int:
        return int(sum(m.sum() for m in self.biadjacency))

    def in_degree(self, x: GridVertex) -> int:
        self._check(x)
        if x.t == self.base:
            return 0
        return int(self.matrix(x.t - 1)[:, x.s - 1].sum())

    def out_degree(self, x: GridVertex) -> int:
        self._check(x)
        if x.t == self.top:
            return 0
        return int(self.matrix(x.t)[x.s - 1, :].sum())

    # -- order ---------------------------------------------------------------

    @cached_property
    def _up(self) -> list[int]:
        """Up-set bitmask of every vertex, by level-major index."""
        n = len(self)
        up = [0] * n
        for t in reversed(self.levels):
            off = self._offsets[t - self.base]
            for s in range(self.size(t)):
                mask = 1 << (off + s)
                if t < self.top:
                    row = self.matrix(t)[s]
                    noff = self._offsets[t + 1 - self.base]
                    for j in np.nonzero(row)[0]:
                        mask |= up[noff + int(j)]
                up[off + s] = mask
        return up

    def reach_leq(self, x: GridVertex, y: GridVertex) -> bool:
        """Reflexive reachability along covers."""
        return bool(self._up[self.index(x)] >> self.index(y) & 1)

    def leq(self, x: GridVertex, y: GridVertex) -> bool:
        self._check(x)
        self._check(y)
        if self.is_cobweb:
            return x.t < y.t or (x.t == y.t and x.s == y.s)
        return self.reach_leq(x, y)

    def less(self, x: GridVertex, y: GridVertex) -> bool:
        return x != y and self.leq(x, y)

    # -- conversions ---------------------------------------------------------

    def to_poset(self) -> "FinitePoset":
        return FinitePoset(tuple(self.vertices()), frozenset(self.covers()))

    def to_json(self) -> dict:
        return {
            "sizes": list(self.sizes),
            "base": self.base,
            "biadjacency": [m.astype(int).tolist() for m in self.biadjacency],
        }

    def to_dot(self, name: str = "hasse") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle, fontsize=10];"]
        for t in self.levels:
            ids = " ".join(f'"{s}_{t}"' for s in range(1, self.size(t) + 1))
            lines.append(f"  {{ rank=same; {ids}; }}")
            for s in range(1, self.size(t) + 1):
                lines.append(f'  "{s}_{t}" [label="<{s},{t}>"];')
        for x, y in self.covers():
            lines.append(f'  "{x.s}_{x.t}" -> "{y.s}_{y.t}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def from_biadjacency(sizes: Sequence[int], mats: Sequence, base: int = 1) -> GradedPoset:
    return GradedPoset(tuple(sizes), tuple(mats), base)


def from_json(doc: dict | str) -> GradedPoset:
    if isinstance(doc, str):
        doc = json.loads(doc)
    sizes = doc["sizes"]
    mats = [np.asarray(m, dtype=bool).reshape(sizes[i], sizes[i + 1]) for i, m in enumerate(doc["biadjacency"])]
    return GradedPoset(tuple(sizes), tuple(mats), int(doc.get("base", 1)))


def cobweb(F: FSequence, n: int, start: int = 1) -> GradedPoset:
    """The cobweb prefix on levels ``start .. n`` (every consecutive pair complete)."""
    if n < max(start, 0):
        raise ValueError(f"need n >= {start}, got n={n}")
    sizes = [value(F, k) for k in range(start, n + 1)]
    mats = [np.ones((sizes[i], sizes[i + 1]), dtype=bool) for i in range(len(sizes) - 1)]
    return GradedPoset(tuple(sizes), tuple(mats), start)


def chain(n: int) -> GradedPoset:
    return GradedPoset((1,) * n, tuple(np.ones((1, 1), dtype=bool) for _ in range(n - 1)))


def antichain(k: int) -> GradedPoset:
    return GradedPoset((k,), ())


def layer(P: GradedPoset, k: int, n: int) -> GradedPoset:
    if not (P.base <= k <= n <= P.top):
        raise ValueError(f"layer <{k}..{n}> out of range {P.base}..{P.top}")
    lo, hi = k - P.base, n - P.base
    return GradedPoset(P.sizes[lo : hi + 1], P.biadjacency[lo:hi], k)


def dual(P: GradedPoset) -> GradedPoset:
    return GradedPoset(P.sizes[::-1], tuple(m.T for m in reversed(P.biadjacency)), P.base)


def dual_vertex(P: GradedPoset, x: GridVertex) -> GridVertex:
    """Image of ``x`` under the level reversal performed by ``dual``."""
    return GridVertex(x.s, P.base + P.top - x.t)


def max_chains(P: GradedPoset) -> Iterator[tuple[GridVertex, ...]]:
    """Maximal chains through every level, in lexicographic order of positions."""
    succ = {
        t: [list(np.nonzero(P.matrix(t)[s])[0] + 1) for s in range(P.size(t))] for t in P.levels[:-1]
    }

    def walk(prefix: list[GridVertex]) -> Iterator[tuple[GridVertex, ...]]:
        last = prefix[-1]
        if last.t == P.top:
            yield tuple(prefix)
            return
        for j in succ[last.t][last.s - 1]:
            prefix.append(GridVertex(int(j), last.t + 1))
            yield from walk(prefix)
            prefix.pop()

    for x in P.level(P.base):
        yield from walk([x])


def mute_vertices(P: GradedPoset) -> set[GridVertex]:
    """Internal vertices (strictly between the extreme levels) missing in- or out-arcs."""
    out = set()
    for t in P.levels[1:-1]:
        for x in P.level(t):
            if P.in_degree(x) == 0 or P.out_degree(x) == 0:
                out.add(x)
    return out


def dummy_vertices(P: GradedPoset) -> set[GridVertex]:
    """Isolated vertices of a poset with at least two levels."""
    if P.height == 0:
        return set()
    return {x for x in P.vertices() if P.in_degree(x) == 0 and P.out_degree(x) == 0}


def is_connected(P: GradedPoset) -> bool:
    return P.to_poset().is_connected()


@dataclass(frozen=True)
class NaturalLabeling:
    vertices: tuple[GridVertex, ...]

    @cached_property
    def _labels(self) -> dict[GridVertex, int]:
        return {v: i + 1 for i, v in enumerate(self.vertices)}

    def label(self, x: GridVertex) -> int:
        return self._labels[x]

    def vertex(self, label: int) -> GridVertex:
        if not 1 <= label <= len(self.vertices):
            raise ValueError(f"label {label} out of range 1..{len(self.vertices)}")
        return self.vertices[label - 1]

    def __len__(self) -> int:
        return len(self.vertices)


def natural_labeling(P: GradedPoset) -> NaturalLabeling:
    return NaturalLabeling(tuple(P.vertices()))


def adjacency_matrix(P: GradedPoset) -> np.ndarray:
    """Hasse adjacency in the natural labeling; nonzero only on the block superdiagonal."""
    n = len(P)
    A = np.zeros((n, n), dtype=int)
    for t in P.levels[:-1]:
        r = P._offsets[t - P.base]
        c = P._offsets[t + 1 - P.base]
        A[r : r + P.size(t), c : c + P.size(t + 1)] = P.matrix(t)
    return A


# -- general finite posets ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FinitePoset:
    """A finite poset given by its Hasse diagram (covers must be irredundant)."""

    vertices: tuple[Hashable, ...]
    covers: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "covers", frozenset(self.covers))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        idx = self._index
        for a, b in self.covers:
            if a not in idx or b not in idx:
                raise ValueError(f"cover ({a!r}, {b!r}) names an unknown vertex")
            if a == b:
                raise ValueError(f"loop at {a!r}")
        self._up  # raises on cycles
        for a, b in self.covers:
            ia, ib = idx[a], idx[b]
            for c in self._succ[ia]:
                if c != ib and self._up[c] >> ib & 1:
                    raise ValueError(f"cover ({a!r}, {b!r}) is implied by transitivity")

    @classmethod
    def from_relation(cls, vertices: Iterable[Hashable], pairs: Iterable[tuple]) -> "FinitePoset":
        """Build from any generating relation; the Hasse diagram is its transitive reduction."""
        vertices = tuple(vertices)
        g = nx.DiGraph()
        g.add_nodes_from(vertices)
        g.add_edges_from((a, b) for a, b in pairs if a != b)
        if not nx.is_directed_acyclic_graph(g):
            raise ValueError("relation has a cycle")
        red = nx.transitive_reduction(g)
        return cls(vertices, frozenset(red.edges()))

    @cached_property
    def _index(self) -> dict[Hashable, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _succ(self) -> list[list[int]]:
        succ = [[] for _ in self.vertices]
        for a, b in self.covers:
            succ[self._index[a]].append(self._index[b])
        for s in succ:
            s.sort()
        return succ

    @cached_property
    def _pred(self) -> list[list[int]]:
        pred = [[] for _ in self.vertices]
        for a, b in self.covers:
            pred[self._index[b]].append(self._index[a])
        for p in pred:
            p.sort()
        return pred

    @cached_property
    def order(self) -> tuple[int, ...]:
        """Smallest-index-first topological order (a natural labeling)."""
        indeg = [len(p) for p in self._pred]
        heap = [i for i, d in enumerate(indeg) if d == 0]
        heapq.heapify(heap)
        out = []
        while heap:
            i = heapq.heappop(heap)
            out.append(i)
            for j in self._succ[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    heapq.heappush(heap, j)
        if len(out) != len(self.vertices):
            raise ValueError("cover relation has a cycle")
        return tuple(out)

    @cached_property
    def _up(self) -> list[int]:
        up = [0] * len(self.vertices)
        for i in reversed(self.order):
            mask = 1 << i
            for j in self._succ[i]:
                mask |= up[j]
            up[i] = mask
        return up

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and self.covers == other.covers

    def __hash__(self) -> int:
        return hash((frozenset(self.vertices), self.covers))

    def __repr__(self) -> str:
        return f"FinitePoset({len(self)} elements, {len(self.covers)} covers)"

    def edge_count(self) -> int:
        return len(self.covers)

    def leq(self, x, y) -> bool:
        return bool(self._up[self._index[x]] >> self._index[y] & 1)

    def less(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x, y) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def covered_by(self, x, y) -> bool:
        return (x, y) in self.covers

    def up_set(self, x) -> set:
        return {self.vertices[i] for i in _bits(self._up[self._index[x]])}

    def minimal(self) -> list:
        return [v for i, v in enumerate(self.vertices) if not self._pred[i]]

    def maximal(self) -> list:
        return [v for i, v in enumerate(self.vertices) if not self._succ[i]]

    def upper_covers(self, x) -> list:
        return [self.vertices[j] for j in self._succ[self._index[x]]]

    def lower_covers(self, x) -> list:
        return [self.vertices[j] for j in self._pred[self._index[x]]]

    def natural_order(self) -> list:
        return [self.vertices[i] for i in self.order]

    def adjacency_matrix(self, order: Sequence | None = None) -> np.ndarray:
        order = list(self.vertices if order is None else order)
        pos = {v: i for i, v in enumerate(order)}
        A = np.zeros((len(order), len(order)), dtype=int)
        for a, b in self.covers:
            A[pos[a], pos[b]] = 1
        return A

    def dual(self) -> "FinitePoset":
        return FinitePoset(self.vertices, frozenset((b, a) for a, b in self.covers))

    def relabel(self, mapping) -> "FinitePoset":
        f = mapping if callable(mapping) else mapping.__getitem__
        return FinitePoset(tuple(f(v) for v in self.vertices), frozenset((f(a), f(b)) for a, b in self.covers))

    def induced(self, subset: Iterable[Hashable]) -> "FinitePoset":
        keep = [v for v in self.vertices if v in set(subset)]
        pairs = [(a, b) for a in keep for b in keep if self.less(a, b)]
        return FinitePoset.from_relation(keep, pairs)

    def hasse_graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.covers)
        return g

    def is_isomorphic(self, other: "FinitePoset") -> bool:
        if len(self) != len(other) or len(self.covers) != len(other.covers):
            return False
        return nx.is_isomorphic(self.hasse_graph(), other.hasse_graph())

    def is_connected(self) -> bool:
        return len(self) == 0 or nx.is_weakly_connected(self.hasse_graph())


def as_poset(P: GradedPoset | FinitePoset) -> FinitePoset:
    return P.to_poset() if isinstance(P, GradedPoset) else P


def poset_from_json(doc: dict | str) -> Any:
    """Load either document form: graded ``{sizes, biadjacency}`` or ``{vertices, covers}``."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    if "sizes" in doc:
        return from_json(doc)
    return FinitePoset(tuple(doc["vertices"]), frozenset(tuple(c) for c in doc["covers"]))
