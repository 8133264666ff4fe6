import random

import pytest
from hypothesis import strategies as st

from pstkit import BiCayleySpec, make_group
from pstkit.bridge import cayley_to_bicayley, example_family

GROUP_ORDERS = [(1,), (2,), (3,), (4,), (5,), (6,), (8,), (2, 2), (2, 4), (3, 3), (2, 2, 2), (10,), (12,), (2, 6)]


def random_spec(rng: random.Random, orders=None, integral_bias: float = 0.5) -> BiCayleySpec:
    """Random valid spec; with probability ``integral_bias`` R, L and T are
    unions of cyclic subgroup generator classes, which keeps them integral."""
    if orders is None:
        orders = rng.choice(GROUP_ORDERS)
    g = make_group(orders)
    els = g.elements()
    e = g.identity()

    def symmetric(p):
        out = set()
        for a in els:
            if a != e and a not in out and rng.random() < p:
                out |= {a, g.inverse(a)}
        return out

    def rational_class(p):
        # elements generating the same cyclic subgroup, taken together
        classes = {}
        for a in els:
            key = frozenset(g.scale(j, a) for j in range(1, g.element_order(a) + 1))
            classes.setdefault(key, set()).add(a)
        out = set()
        for members in classes.values():
            if e not in members and rng.random() < p:
                out |= members
        return out

    if rng.random() < integral_bias:
        R, L, T = rational_class(0.4), rational_class(0.4), rational_class(0.4)
        if rng.random() < 0.5:
            L = set(R)
    else:
        R, L = symmetric(0.35), symmetric(0.35)
        T = {a for a in els if rng.random() < 0.3}
        if rng.random() < 0.3:
            L = set(R)
    return BiCayleySpec.build(g, sorted(R), sorted(L), sorted(T))


@st.composite
def specs(draw, max_n: int = 12):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    choices = [o for o in GROUP_ORDERS if _prod(o) <= max_n]
    return random_spec(rng, rng.choice(choices))


def _prod(orders):
    out = 1
    for o in orders:
        out *= o
    return out


@pytest.fixture
def k2():
    return BiCayleySpec.build([1], [], [], [0])


@pytest.fixture
def c4():
    return BiCayleySpec.build([2], [], [], [0, 1])


@pytest.fixture
def double_triangle():
    return BiCayleySpec.build([3], [1, 2], [1, 2], [])


def family_spec(name: str, m: int) -> BiCayleySpec:
    ext, s, _ = example_family(name, m)
    return cayley_to_bicayley(ext, s)


@pytest.fixture
def dihedral1():
    return family_spec("dihedral", 1)
