import numpy as np
import pytest
from hypothesis import strategies as st

from cobweb import fsequence as fs
from cobweb.poset import GradedPoset

BUILTINS = {
    "natural": fs.natural(),
    "fibonacci": fs.fibonacci(),
    "gaussian2": fs.gaussian(2),
    "constant2": fs.constant(2),
}


@pytest.fixture(params=list(BUILTINS), ids=list(BUILTINS))
def seq(request):
    return BUILTINS[request.param]


def max_levels(F, cap=60, n_max=7):
    """Largest n <= n_max whose cobweb prefix has at most ``cap`` vertices."""
    total, n = 0, 0
    for k in range(1, n_max + 1):
        total += F(k)
        if total > cap:
            break
        n = k
    return n


@st.composite
def graded_posets(draw, max_levels=4, max_size=3):
    sizes = draw(st.lists(st.integers(1, max_size), min_size=1, max_size=max_levels))
    mats = []
    for a, b in zip(sizes, sizes[1:]):
        bits = draw(st.lists(st.booleans(), min_size=a * b, max_size=a * b))
        mats.append(np.array(bits, dtype=bool).reshape(a, b))
    return GradedPoset(tuple(sizes), tuple(mats))


def mobius_by_recursion(P):
    """mu(x,x) = 1, mu(x,y) = -sum_{x<=z<y} mu(x,z), using only the poset's leq."""
    V = P.vertices() if hasattr(P, "levels") else P.natural_order()
    mu = {}
    for x in V:
        for y in V:
            if not P.leq(x, y):
                mu[x, y] = 0
    for x in V:
        for y in V:  # V is a linear extension, so every z in [x, y) precedes y
            if not P.leq(x, y):
                continue
            if x == y:
                mu[x, y] = 1
            else:
                mu[x, y] = -sum(mu[x, z] for z in V if z != y and P.leq(x, z) and P.leq(z, y))
    return V, mu
