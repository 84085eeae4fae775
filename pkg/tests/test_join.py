import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings

from cobweb import fsequence as fs
from cobweb.join import (
    NaturalJoinConformityError,
    OverlapSpec,
    cardinal_sum,
    cartesian_product,
    dibiclique,
    graded_overlap,
    join_chain,
    join_graded,
    join_product_pair,
    join_product_witness,
    natural_join,
    natural_join_adjacency,
    noncommutativity_witnesses,
    ordinal_sum,
    product_inequality_witness,
)
from cobweb.poset import FinitePoset, GradedPoset, adjacency_matrix, antichain, as_poset, chain, cobweb, layer
from cobweb.relations import EXAMPLE_E1, EXAMPLE_E2

from conftest import graded_posets
from small_posets import conforming_pair, graded_of_size, posets_of_size, random_graded, small_triples


# -- sums ------------------------------------------------------------------------------------


def test_cardinal_sum_examples():
    two = FinitePoset(("a", "b"), {("a", "b")})
    S = cardinal_sum(two, FinitePoset(("c",), ()))
    assert len(S) == 3 and len(S.covers) == 1
    assert cardinal_sum(antichain(2), antichain(3)).is_isomorphic(as_poset(antichain(5)))


def test_ordinal_sum_examples():
    D = ordinal_sum(antichain(2), antichain(3))
    assert len(D.covers) == 6
    assert D.is_isomorphic(as_poset(dibiclique(2, 3)))
    two = FinitePoset(("a", "b"), {("a", "b")})
    four = ordinal_sum(two, FinitePoset(("c", "d"), {("c", "d")}))
    assert len(four.covers) == 3 and four.is_isomorphic(as_poset(chain(4)))


def test_ordinal_sum_everything_below():
    P, Q = as_poset(random_graded(random.Random(3))), as_poset(random_graded(random.Random(4)))
    S = ordinal_sum(P, Q)
    assert all(S.less((0, x), (1, y)) for x in P.vertices for y in Q.vertices)


def test_cardinal_sum_adjacency_is_direct_sum():
    rng = random.Random(7)
    for _ in range(20):
        P, Q = as_poset(random_graded(rng)), as_poset(random_graded(rng))
        S = cardinal_sum(P, Q)
        A = S.adjacency_matrix([(0, v) for v in P.vertices] + [(1, w) for w in Q.vertices])
        n = len(P)
        assert np.array_equal(A[:n, :n], P.adjacency_matrix())
        assert np.array_equal(A[n:, n:], Q.adjacency_matrix())
        assert not A[:n, n:].any() and not A[n:, :n].any()


def test_ordinal_sum_adjacency_block_is_max_by_min():
    rng = random.Random(8)
    for _ in range(20):
        P, Q = as_poset(random_graded(rng)), as_poset(random_graded(rng))
        S = ordinal_sum(P, Q)
        A = S.adjacency_matrix([(0, v) for v in P.vertices] + [(1, w) for w in Q.vertices])
        n = len(P)
        expect = np.array([[int(a in P.maximal() and b in Q.minimal()) for b in Q.vertices] for a in P.vertices])
        assert np.array_equal(A[:n, n:], expect)


@settings(max_examples=100, deadline=None)
@given(graded_posets(), graded_posets())
def test_sum_counts(P, Q):
    P, Q = as_poset(P), as_poset(Q)
    C, O = cardinal_sum(P, Q), ordinal_sum(P, Q)
    assert len(C) == len(P) + len(Q)
    assert len(C.covers) == len(P.covers) + len(Q.covers)
    assert len(O) == len(P) + len(Q)
    assert len(O.covers) == len(P.covers) + len(Q.covers) + len(P.maximal()) * len(Q.minimal())


def test_cardinal_sum_commutes_up_to_isomorphism():
    for a in range(1, 6):
        for b in range(1, 9 - a):
            if b > 5:
                continue
            for X in posets_of_size(a):
                for Y in posets_of_size(b):
                    assert cardinal_sum(X, Y).is_isomorphic(cardinal_sum(Y, X))


def _assoc_map(v):
    tag, rest = v
    if tag == 1:
        return (1, (1, rest))
    inner, x = rest
    return (0, x) if inner == 0 else (1, (0, x))


@pytest.mark.parametrize("op", [cardinal_sum, ordinal_sum], ids=["cardinal", "ordinal"])
def test_sum_associative_small(op):
    for X, Y, Z in small_triples(max_each=5, max_total=7):
        assert op(op(X, Y), Z).relabel(_assoc_map) == op(X, op(Y, Z))


def test_ordinal_sum_not_commutative():
    X, Y, XY, YX = noncommutativity_witnesses()["ordinal_sum"]
    assert not XY.is_isomorphic(YX)


def test_ordinal_sum_edge_counts_differ():
    X, Y = dibiclique(1, 2), chain(1)  # M(X) m(Y) = 2, M(Y) m(X) = 1
    assert len(ordinal_sum(X, Y).covers) == 4 and len(ordinal_sum(Y, X).covers) == 3


# -- natural join ----------------------------------------------------------------------------


def test_overlap_must_be_nonempty():
    with pytest.raises(ValueError, match="overlap must be nonempty"):
        natural_join(chain(2), chain(2), OverlapSpec(()))
    with pytest.raises(ValueError, match="overlap must be nonempty"):
        graded_overlap(chain(2), chain(2), 0)


def test_conformity_violation():
    P = FinitePoset(("a", "b", "c"), {("a", "b")})
    Q = FinitePoset(("x", "y"), ())
    with pytest.raises(NaturalJoinConformityError, match="conformity error"):
        natural_join(P, Q, OverlapSpec((("a", "x"), ("b", "y"))))
    A = GradedPoset((2, 2), (np.eye(2, dtype=bool),))
    B = GradedPoset((2, 2, 1), (np.ones((2, 2), dtype=bool), np.ones((2, 1), dtype=bool)))
    with pytest.raises(NaturalJoinConformityError):
        join_graded(A, B, 2)
    with pytest.raises(NaturalJoinConformityError):
        join_graded(dibiclique(1, 2), dibiclique(3, 1), 1)


def test_join_case_a():
    A1, A2, A3 = antichain(1), antichain(2), antichain(3)
    P, Q = ordinal_sum(A1, A2), ordinal_sum(A2, A3)
    ov = OverlapSpec(tuple(((1, v), (0, v)) for v in as_poset(A2).vertices))
    J = natural_join(P, Q, ov)
    assert J.is_isomorphic(ordinal_sum(ordinal_sum(A1, A2), A3))


def test_join_case_b():
    P1, P2, P3 = as_poset(chain(2)), as_poset(dibiclique(1, 2)), as_poset(antichain(2))
    P, Q = cardinal_sum(P1, P2), cardinal_sum(P2, P3)
    ov = OverlapSpec(tuple(((1, v), (0, v)) for v in P2.vertices))
    assert natural_join(P, Q, ov).is_isomorphic(cardinal_sum(cardinal_sum(P1, P2), P3))


def test_join_case_c():
    P1, P2, P3 = as_poset(chain(2)), as_poset(antichain(2)), as_poset(chain(1))
    P, Q = cardinal_sum(P1, P2), ordinal_sum(P2, P3)
    ov = OverlapSpec(tuple(((1, v), (0, v)) for v in P2.vertices))
    assert natural_join(P, Q, ov).is_isomorphic(cardinal_sum(P1, ordinal_sum(P2, P3)))


def test_join_order_crosses_by_paths():
    P = FinitePoset(("a", "b"), {("a", "b")})
    Q = FinitePoset(("b2", "c"), {("b2", "c")})
    J = natural_join(P, Q, OverlapSpec((("b", "b2"),)))
    assert J.less((0, "a"), (1, "c"))
    assert len(J) == 3 and len(J.covers) == 2


@pytest.mark.parametrize("F", [fs.natural(), fs.fibonacci(), fs.gaussian(2), fs.constant(2)], ids=str)
def test_dibiclique_chain_is_cobweb(F):
    for n in range(1, 6):
        parts = [dibiclique(F(k), F(k + 1), base=k) for k in range(1, n)]
        if not parts:
            continue
        assert join_chain(parts) == cobweb(F, n)


def test_join_graded_agrees_with_general_join():
    rng = random.Random(11)
    for _ in range(100):
        P, Q, shared = conforming_pair(rng)
        G = join_graded(P, Q, shared)
        J = natural_join(P, Q, graded_overlap(P, Q, shared))
        assert as_poset(G).is_isomorphic(J)


def test_join_counts_random_pairs():
    rng = random.Random(12)
    for _ in range(100):
        P, Q, shared = conforming_pair(rng)
        R = layer(P, P.top - shared + 1, P.top)
        J = natural_join(P, Q, graded_overlap(P, Q, shared))
        G = join_graded(P, Q, shared)
        assert len(J) == len(G) == len(P) + len(Q) - len(R)
        assert len(J.covers) == G.edge_count() == P.edge_count() + Q.edge_count() - R.edge_count()
        # never the ordinal sum: strictly fewer vertices
        assert len(J) < len(ordinal_sum(P, Q))


def test_join_graded_associative_exhaustive():
    G = [g for n in range(1, 6) for g in graded_of_size(n)]
    by_bottom = {}
    for g in G:
        by_bottom.setdefault(g.sizes[0], []).append(g)
    checked = 0
    for X in G:
        for Y in by_bottom.get(X.sizes[-1], ()):
            if len(X) + len(Y) > 7:
                continue
            for Z in by_bottom.get(Y.sizes[-1], ()):
                if len(X) + len(Y) + len(Z) > 8:
                    continue
                assert join_graded(join_graded(X, Y, 1), Z, 1) == join_graded(X, join_graded(Y, Z, 1), 1)
                checked += 1
    assert checked > 1000


def test_natural_join_associative_general_route():
    rng = random.Random(13)
    for _ in range(60):
        X = random_graded(rng, max_levels=3)
        Y = random_graded(rng, max_levels=3)
        Y = GradedPoset((X.sizes[-1],) + Y.sizes, (np.ones((X.sizes[-1], Y.sizes[0]), bool),) + Y.biadjacency)
        Z = random_graded(rng, max_levels=3)
        Z = GradedPoset((Y.sizes[-1],) + Z.sizes, (np.ones((Y.sizes[-1], Z.sizes[0]), bool),) + Z.biadjacency)
        XY = natural_join(X, Y, graded_overlap(X, Y, 1))
        left = natural_join(XY, Z, OverlapSpec(tuple(((1, b), c) for b, c in graded_overlap(Y, Z, 1).pairs)))
        YZ = natural_join(Y, Z, graded_overlap(Y, Z, 1))
        right = natural_join(X, YZ, OverlapSpec(tuple((a, (0, b)) for a, b in graded_overlap(X, Y, 1).pairs)))
        assert left.is_isomorphic(right)
        assert left.is_isomorphic(as_poset(join_chain([X, Y, Z])))


def test_natural_join_not_commutative():
    V, W, VW, WV = noncommutativity_witnesses()["natural_join"]
    assert VW.sizes == (1, 2, 1) and WV.sizes == (2, 1, 2)
    assert not as_poset(VW).is_isomorphic(as_poset(WV))


# -- adjacency-matrix join ---------------------------------------------------------------------


def test_adjacency_join_trivial():
    A = np.array([[0, 1], [0, 0]])
    J = natural_join_adjacency(A, A, 1)
    assert np.array_equal(J, np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]]))


def _bip(E):
    return np.array([[int((a, b) in E.tuples) for b in E.domains[1]] for a in E.domains[0]])


def test_adjacency_join_ternary_example():
    B1, B2 = _bip(EXAMPLE_E1), _bip(EXAMPLE_E2)
    A = np.zeros((7, 7), dtype=int)
    A[:3, 3:] = B1
    B = np.zeros((6, 6), dtype=int)
    B[:4, 4:] = B2
    J = natural_join_adjacency(A, B, 4)
    assert J.shape == (9, 9)
    assert np.array_equal(J[:3, 3:7], B1) and np.array_equal(J[3:7, 7:], B2)
    assert J[:3, 7:].sum() == 0 and np.tril(J).sum() == 0
    assert J.sum() == B1.sum() + B2.sum()


def test_adjacency_join_matches_graded_join():
    rng = random.Random(14)
    for _ in range(50):
        P, Q, shared = conforming_pair(rng)
        k = sum(P.sizes[-shared:])
        J = natural_join_adjacency(adjacency_matrix(P), adjacency_matrix(Q), k)
        assert np.array_equal(J, adjacency_matrix(join_graded(P, Q, shared)))


def test_adjacency_join_associative():
    rng = random.Random(15)
    for _ in range(50):
        X, Y, s1 = conforming_pair(rng)
        _, Z, s2 = conforming_pair_from(rng, Y)
        A, B, C = adjacency_matrix(X), adjacency_matrix(Y), adjacency_matrix(Z)
        k1, k2 = sum(X.sizes[-s1:]), sum(Y.sizes[-s2:])
        left = natural_join_adjacency(natural_join_adjacency(A, B, k1), C, k2)
        right = natural_join_adjacency(A, natural_join_adjacency(B, C, k2), k1)
        assert np.array_equal(left, right)


def conforming_pair_from(rng, P):
    """A Q stacked on P's top level through a random link matrix."""
    extra = random_graded(rng, max_levels=2)
    link = np.array([[rng.random() < 0.6 for _ in range(extra.sizes[0])] for _ in range(P.sizes[-1])], dtype=bool)
    return P, GradedPoset((P.sizes[-1],) + extra.sizes, (link,) + extra.biadjacency), 1


def test_adjacency_join_conformity():
    A = np.array([[0, 1, 1], [0, 0, 1], [0, 0, 0]])
    B = np.array([[0, 0, 1], [0, 0, 1], [0, 0, 0]])
    with pytest.raises(NaturalJoinConformityError, match="conformity error"):
        natural_join_adjacency(A, B, 2)
    with pytest.raises(ValueError, match="overlap must be nonempty"):
        natural_join_adjacency(A, B, 0)


# -- products ----------------------------------------------------------------------------------


def test_product_identities():
    ps = [p for n in range(1, 4) for p in posets_of_size(n)]
    for X, Y in itertools.product(ps, repeat=2):
        assert cartesian_product(X, Y).is_isomorphic(cartesian_product(Y, X))
        for Z in ps[:4]:
            assert cartesian_product(cartesian_product(X, Y), Z).is_isomorphic(
                cartesian_product(X, cartesian_product(Y, Z))
            )
            assert cartesian_product(cardinal_sum(X, Y), Z).is_isomorphic(
                cardinal_sum(cartesian_product(X, Z), cartesian_product(Y, Z))
            )


def test_product_ordinal_sum_inequality():
    lhs, rhs = product_inequality_witness()
    assert not lhs.is_isomorphic(rhs)


def test_product_join_inequality_witness():
    lhs, rhs = join_product_witness()
    assert len(lhs) != len(rhs) and not lhs.is_isomorphic(rhs)


def test_product_distributes_over_graded_join():
    # computed rather than assumed: with Z copied over both operands the two sides agree
    rng = random.Random(16)
    for _ in range(30):
        X, Y, shared = conforming_pair(rng)
        if len(X) + len(Y) > 9:
            continue
        Z = as_poset(random_graded(rng, max_levels=2, max_size=2))
        lhs, rhs = join_product_pair(X, Y, shared, Z)
        assert lhs.is_isomorphic(rhs)
