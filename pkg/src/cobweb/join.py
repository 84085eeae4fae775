"""Poset operations: cardinal sum, ordinal sum, natural join, and their matrix forms.

Results of the sums are ``FinitePoset`` values whose vertex names are tagged
``(0, v)`` for the left operand and ``(1, w)`` for the right one, so the
vertex bijections used in the associativity checks are explicit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable

import numpy as np

from .poset import FinitePoset, GradedPoset, as_poset


class NaturalJoinConformityError(ValueError):
    pass


def cardinal_sum(P, Q) -> FinitePoset:
    P, Q = as_poset(P), as_poset(Q)
    verts = [(0, v) for v in P.vertices] + [(1, w) for w in Q.vertices]
    covers = {((0, a), (0, b)) for a, b in P.covers} | {((1, a), (1, b)) for a, b in Q.covers}
    return FinitePoset(tuple(verts), frozenset(covers))


def ordinal_sum(P, Q) -> FinitePoset:
    """Everything in ``P`` below everything in ``Q``; new covers join max(P) to min(Q)."""
    P, Q = as_poset(P), as_poset(Q)
    verts = [(0, v) for v in P.vertices] + [(1, w) for w in Q.vertices]
    covers = {((0, a), (0, b)) for a, b in P.covers} | {((1, a), (1, b)) for a, b in Q.covers}
    covers |= {((0, a), (1, b)) for a in P.maximal() for b in Q.minimal()}
    return FinitePoset(tuple(verts), frozenset(covers))


def cartesian_product(P, Q) -> FinitePoset:
    """Product order: ``(x1, y1) <= (x2, y2)`` iff ``x1 <= x2`` and ``y1 <= y2``."""
    P, Q = as_poset(P), as_poset(Q)
    verts = [(x, y) for x in P.vertices for y in Q.vertices]
    covers = {((a, y), (b, y)) for a, b in P.covers for y in Q.vertices}
    covers |= {((x, a), (x, b)) for x in P.vertices for a, b in Q.covers}
    return FinitePoset(tuple(verts), frozenset(covers))


@dataclass(frozen=True)
class OverlapSpec:
    """Identification ``p_vertex <-> q_vertex`` of a sub-poset of P with one of Q."""

    pairs: tuple[tuple[Hashable, Hashable], ...]

    @property
    def left(self) -> list:
        return [a for a, _ in self.pairs]

    @property
    def right(self) -> list:
        return [b for _, b in self.pairs]


def graded_overlap(P: GradedPoset, Q: GradedPoset, shared: int) -> OverlapSpec:
    """Glue the top ``shared`` levels of P onto the bottom ``shared`` levels of Q."""
    if shared < 1:
        raise ValueError("overlap must be nonempty")
    if shared > min(len(P.sizes), len(Q.sizes)):
        raise NaturalJoinConformityError(f"cannot share {shared} levels")
    pairs = []
    for i in range(shared):
        tp = P.top - shared + 1 + i
        tq = Q.base + i
        if P.size(tp) != Q.size(tq):
            raise NaturalJoinConformityError(f"level sizes differ: {P.size(tp)} vs {Q.size(tq)}")
        pairs += list(zip(P.level(tp), Q.level(tq)))
    return OverlapSpec(tuple(pairs))


def natural_join(P, Q, overlap: OverlapSpec) -> FinitePoset:
    """Glue P and Q along an identified sub-poset on which both orders agree.

    Inside P the order stays that of P, inside Q that of Q; between the two
    private parts it is reachability along the union of both Hasse diagrams.
    """
    P, Q = as_poset(P), as_poset(Q)
    if not overlap.pairs:
        raise ValueError("overlap must be nonempty")
    left, right = overlap.left, overlap.right
    if len(set(left)) != len(left) or len(set(right)) != len(right):
        raise NaturalJoinConformityError("overlap is not a bijection")
    pset, qset = set(P.vertices), set(Q.vertices)
    if not set(left) <= pset or not set(right) <= qset:
        raise NaturalJoinConformityError("overlap names vertices outside the operands")
    for a, a2 in overlap.pairs:
        for b, b2 in overlap.pairs:
            if P.leq(a, b) != Q.leq(a2, b2):
                raise NaturalJoinConformityError(
                    f"natural join conformity error: orders disagree on ({a!r}, {b!r}) ~ ({a2!r}, {b2!r})"
                )
    to_p = dict(zip(right, left))
    rename_q = {w: (0, to_p[w]) if w in to_p else (1, w) for w in Q.vertices}
    verts = [(0, v) for v in P.vertices] + [rename_q[w] for w in Q.vertices if w not in to_p]
    rel = {((0, a), (0, b)) for a, b in P.covers} | {(rename_q[a], rename_q[b]) for a, b in Q.covers}
    J = FinitePoset.from_relation(verts, rel)
    for a in P.vertices:
        for b in P.vertices:
            if J.leq((0, a), (0, b)) != P.leq(a, b):
                raise NaturalJoinConformityError(f"join would change the order of P at ({a!r}, {b!r})")
    for a in Q.vertices:
        for b in Q.vertices:
            if J.leq(rename_q[a], rename_q[b]) != Q.leq(a, b):
                raise NaturalJoinConformityError(f"join would change the order of Q at ({a!r}, {b!r})")
    return J


def join_graded(P: GradedPoset, Q: GradedPoset, shared: int) -> GradedPoset:
    """Natural join of graded posets glued along ``shared`` whole levels."""
    graded_overlap(P, Q, shared)  # size checks
    for i in range(shared - 1):
        a = P.biadjacency[len(P.biadjacency) - (shared - 1) + i]
        b = Q.biadjacency[i]
        if not np.array_equal(a, b):
            raise NaturalJoinConformityError("natural join conformity error: shared levels carry different covers")
    sizes = P.sizes + Q.sizes[shared:]
    mats = P.biadjacency + Q.biadjacency[shared - 1 :]
    return GradedPoset(sizes, mats, P.base)


def dibiclique(m: int, n: int, base: int = 1) -> GradedPoset:
    """Complete bipartite two-level poset ``Phi_base (+) Phi_base+1``."""
    return GradedPoset((m, n), (np.ones((m, n), dtype=bool),), base)


def join_chain(parts: list[GradedPoset], shared: int = 1) -> GradedPoset:
    out = parts[0]
    for p in parts[1:]:
        out = join_graded(out, p, shared)
    return out


def natural_join_adjacency(A: np.ndarray, B: np.ndarray, shared: int) -> np.ndarray:
    """Natural join of Hasse adjacency matrices over ``V+W`` and ``W+U`` (``|W| = shared``)."""
    A, B = np.asarray(A), np.asarray(B)
    if shared < 1:
        raise ValueError("overlap must be nonempty")
    nv = len(A) - shared
    nu = len(B) - shared
    if nv < 0 or nu < 0:
        raise NaturalJoinConformityError("shared block larger than an operand")
    if not np.array_equal(A[nv:, nv:], B[:shared, :shared]):
        raise NaturalJoinConformityError("natural join conformity error: shared blocks differ")
    if np.any(A[nv:, :nv]) or np.any(B[shared:, :shared]):
        raise NaturalJoinConformityError("operands are not block upper-triangular")
    N = nv + shared + nu
    out = np.zeros((N, N), dtype=A.dtype)
    out[: nv + shared, : nv + shared] = A
    out[nv:, nv:] = B
    return out


# -- identities and witnesses -----------------------------------------------------------


def noncommutativity_witnesses() -> dict[str, tuple]:
    """Concrete operands where ordinal sum and natural join fail to commute."""
    from .poset import antichain, chain

    X, Y = chain(2), antichain(2)
    ordinal = (X, Y, ordinal_sum(X, Y), ordinal_sum(Y, X))
    V, W = dibiclique(1, 2), dibiclique(2, 1)
    joined = (V, W, join_graded(V, W, 1), join_graded(W, V, 1))
    return {"ordinal_sum": ordinal, "natural_join": joined}


def product_inequality_witness() -> tuple[FinitePoset, FinitePoset]:
    """``(X (+) Y) x Z`` against ``X x Z (+) Y x Z`` for single points and a 2-chain."""
    from .poset import chain

    X, Y, Z = chain(1), chain(1), chain(2)
    return cartesian_product(ordinal_sum(X, Y), Z), ordinal_sum(cartesian_product(X, Z), cartesian_product(Y, Z))


def product_overlap(P: GradedPoset, Q: GradedPoset, shared: int, Z) -> OverlapSpec:
    """The overlap of ``P x Z`` and ``Q x Z`` induced by gluing P and Q, copied over Z."""
    zs = as_poset(Z).vertices
    return OverlapSpec(tuple(((a, z), (b, z)) for a, b in graded_overlap(P, Q, shared).pairs for z in zs))


def join_product_pair(X: GradedPoset, Y: GradedPoset, shared: int, Z) -> tuple[FinitePoset, FinitePoset]:
    """``(X |x| Y) x Z`` against ``(X x Z) |x| (Y x Z)``."""
    lhs = cartesian_product(join_graded(X, Y, shared), Z)
    rhs = natural_join(cartesian_product(X, Z), cartesian_product(Y, Z), product_overlap(X, Y, shared, Z))
    return lhs, rhs


def join_product_witness() -> tuple[FinitePoset, FinitePoset]:
    """``(X |x| Y) x Z`` against ``(X x Z) |x| Y`` glued on one copy of the overlap."""
    from .poset import chain

    X, Y, Z = dibiclique(1, 2), dibiclique(2, 1), chain(2)
    z0 = as_poset(Z).minimal()[0]
    pairs = tuple(((a, z0), b) for a, b in graded_overlap(X, Y, 1).pairs)
    return cartesian_product(join_graded(X, Y, 1), Z), natural_join(cartesian_product(X, Z), Y, OverlapSpec(pairs))
