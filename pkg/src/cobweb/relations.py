"""n-ary relations as natural joins of chains of binary relations."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .poset import GradedPoset, max_chains


@dataclass(frozen=True)
class NaryRelation:
    domains: tuple[tuple[Hashable, ...], ...]
    tuples: frozenset

    def __post_init__(self):
        domains = tuple(tuple(d) for d in self.domains)
        tuples = frozenset(tuple(t) for t in self.tuples)
        object.__setattr__(self, "domains", domains)
        object.__setattr__(self, "tuples", tuples)
        sets = [set(d) for d in domains]
        for t in tuples:
            if len(t) != len(domains):
                raise ValueError(f"tuple {t} has arity {len(t)}, expected {len(domains)}")
            for i, x in enumerate(t):
                if x not in sets[i]:
                    raise ValueError(f"coordinate {i} of {t} is outside its domain")

    @property
    def arity(self) -> int:
        return len(self.domains)

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self):
        return iter(self.sorted())

    def sorted(self) -> list[tuple]:
        pos = [{x: i for i, x in enumerate(d)} for d in self.domains]
        return sorted(self.tuples, key=lambda t: tuple(pos[i][x] for i, x in enumerate(t)))

    def project(self, coords: Sequence[int]) -> "NaryRelation":
        return NaryRelation(
            tuple(self.domains[i] for i in coords), frozenset(tuple(t[i] for i in coords) for t in self.tuples)
        )

    def to_json(self) -> dict:
        return {"domains": [list(d) for d in self.domains], "tuples": [list(t) for t in self.sorted()]}

    @classmethod
    def from_json(cls, doc: dict | str) -> "NaryRelation":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls(tuple(tuple(d) for d in doc["domains"]), frozenset(tuple(t) for t in doc["tuples"]))


def binary(left: Iterable, right: Iterable, pairs: Iterable[tuple]) -> NaryRelation:
    return NaryRelation((tuple(left), tuple(right)), frozenset(pairs))


def compose_nary(chain: Sequence[NaryRelation]) -> NaryRelation:
    """Relational natural join ``E_0 |x| E_1 |x| ...`` on consecutive shared domains."""
    if not chain:
        raise ValueError("empty chain")
    for E in chain:
        if E.arity != 2:
            raise ValueError("compose_nary expects binary relations")
    for E, G in zip(chain, chain[1:]):
        if set(E.domains[1]) != set(G.domains[0]):
            raise ValueError("domain mismatch between consecutive relations")
    rows = [(a, b) for a, b in chain[0].sorted()]
    for E in chain[1:]:
        succ: dict = {}
        for a, b in E.sorted():
            succ.setdefault(a, []).append(b)
        rows = [r + (b,) for r in rows for b in succ.get(r[-1], ())]
    domains = (chain[0].domains[0],) + tuple(E.domains[1] for E in chain)
    return NaryRelation(domains, frozenset(rows))


def decompose_nary(T: NaryRelation) -> list[NaryRelation]:
    if T.arity < 2:
        raise ValueError("arity must be at least 2")
    return [T.project((k, k + 1)) for k in range(T.arity - 1)]


def is_identifiable(P: GradedPoset) -> bool:
    """No biadjacency matrix of P has a zero row or a zero column."""
    return all(m.any(axis=1).all() and m.any(axis=0).all() for m in P.biadjacency)


def relations_of(P: GradedPoset) -> list[NaryRelation]:
    """The cover relation of P split into its level-to-level binary relations."""
    out = []
    for t in P.levels[:-1]:
        lo, hi = P.level(t), P.level(t + 1)
        out.append(binary(lo, hi, [(x, y) for x, y in P.covers() if x.t == t]))
    return out


def chain_relation(P: GradedPoset) -> NaryRelation:
    """The maximal chains of P as a relation over its levels."""
    return NaryRelation(tuple(tuple(P.level(t)) for t in P.levels), frozenset(max_chains(P)))


def complete(domains: Sequence[Sequence]) -> list[NaryRelation]:
    return [
        binary(a, b, [(x, y) for x in a for y in b]) for a, b in zip(domains, domains[1:])
    ]


# Worked ternary example: T = E1 |x| E2 over X = {x1..x3}, Z = {z1..z4}, Y = {y1, y2}.
EXAMPLE_X = ("x1", "x2", "x3")
EXAMPLE_Z = ("z1", "z2", "z3", "z4")
EXAMPLE_Y = ("y1", "y2")
EXAMPLE_E1 = binary(EXAMPLE_X, EXAMPLE_Z, [("x1", "z1"), ("x1", "z2"), ("x1", "z4"), ("x2", "z3"), ("x3", "z3")])
EXAMPLE_E2 = binary(EXAMPLE_Z, EXAMPLE_Y, [("z1", "y1"), ("z2", "y1"), ("z3", "y1"), ("z4", "y2")])
# Listing of T as originally printed; its two z3 tuples end in y2, which E2 does not allow.
EXAMPLE_T_LISTED = NaryRelation(
    (EXAMPLE_X, EXAMPLE_Z, EXAMPLE_Y),
    frozenset(
        {("x1", "z1", "y1"), ("x1", "z2", "y1"), ("x1", "z4", "y2"), ("x2", "z3", "y2"), ("x3", "z3", "y2")}
    ),
)


@dataclass
class TernaryReport:
    derived: NaryRelation
    listed: NaryRelation
    only_derived: list[tuple]
    only_listed: list[tuple]

    @property
    def differing_coordinates(self) -> set[int]:
        """Coordinates in which paired-up differing tuples disagree."""
        coords = set()
        for a in self.only_derived:
            for b in self.only_listed:
                diff = [i for i in range(len(a)) if a[i] != b[i]]
                if len(diff) == 1:
                    coords.add(diff[0])
        return coords


def ternary_example() -> TernaryReport:
    T = compose_nary([EXAMPLE_E1, EXAMPLE_E2])
    listed = EXAMPLE_T_LISTED
    return TernaryReport(
        T,
        listed,
        sorted(T.tuples - listed.tuples),
        sorted(listed.tuples - T.tuples),
    )
