import cmath
import itertools
import math

import pytest
from hypothesis import given, strategies as st

from pstkit import CycInt, cyclotomic_poly, make_group
from pstkit.cyclotomic import ModulusMismatchError, euler_phi

from conftest import GROUP_ORDERS


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_small_cyclotomic_polys():
    # ascending coefficients
    assert tuple(cyclotomic_poly(1)) == (-1, 1)
    assert tuple(cyclotomic_poly(2)) == (1, 1)
    assert tuple(cyclotomic_poly(12)) == (1, 0, -1, 0, 1)
    assert len(cyclotomic_poly(12)) - 1 == euler_phi(12) == 4


@pytest.mark.parametrize("N", range(1, 65))
def test_phi_product_identity(N):
    prod = [1]
    for d in range(1, N + 1):
        if N % d == 0:
            prod = _polymul(prod, list(cyclotomic_poly(d)))
    expected = [-1] + [0] * (N - 1) + [1]
    assert prod == expected
    assert len(cyclotomic_poly(N)) - 1 == euler_phi(N)


def test_arithmetic_examples():
    z4 = CycInt.root(4, 1)
    assert (1 + z4) + (1 - z4) == 2
    assert (z4 * z4 + 1).is_zero()
    assert CycInt.root(8, 3).conj() == CycInt.root(8, 5)


@pytest.mark.parametrize("N,exps,zero", [(2, [0, 1], True), (3, [0, 1, 2], True), (4, [0, 1], False)])
def test_is_zero(N, exps, zero):
    assert CycInt.from_exponents(N, exps).is_zero() is zero


def test_as_integer():
    assert (2 + CycInt.from_exponents(2, [0, 1])).as_integer() == 2
    assert CycInt.from_exponents(8, [1, 7]).as_integer() is None
    assert CycInt.from_exponents(4, [1, 3]).as_integer() == 0


def test_numeric_eval():
    assert abs(CycInt.from_exponents(2, [0, 1]).numeric_eval()) < 1e-12
    assert CycInt.root(4, 1).numeric_eval() == pytest.approx(1j, abs=1e-12)
    assert abs(CycInt.from_exponents(8, range(8)).numeric_eval()) < 1e-12


def test_modulus_mismatch():
    with pytest.raises(ModulusMismatchError):
        CycInt.root(4, 1) + CycInt.root(8, 1)


def test_real_sign_resolves_tiny_differences():
    # 2cos(2pi/7) + 2cos(4pi/7) + 2cos(6pi/7) = -1 exactly
    x = CycInt.from_exponents(7, range(1, 7))
    assert x.real_sign() == -1
    sqrt2 = CycInt.from_exponents(8, [1, 7])
    assert (sqrt2 * sqrt2 - 2).is_zero()
    assert (sqrt2 - 1).real_sign() == 1
    with pytest.raises(ValueError):
        CycInt.root(4, 1).real_sign()


@pytest.mark.parametrize("orders", [o for o in GROUP_ORDERS] + [(16,), (4, 4), (2, 8), (15,)])
def test_character_orthogonality_exact(orders):
    g = make_group(orders)
    N, els = g.exponent, g.elements()
    for j, k in itertools.product(els, repeat=2):
        total = CycInt.from_exponents(N, (g.character_exponent(j, h) - g.character_exponent(k, h) for h in els))
        assert total == (g.size if j == k else 0)


moduli = st.integers(1, 24)


@st.composite
def cyc_pairs(draw):
    N = draw(moduli)
    coeff = st.lists(st.integers(-5, 5), min_size=N, max_size=N).map(tuple)
    return CycInt(N, draw(coeff)), CycInt(N, draw(coeff))


@given(cyc_pairs())
def test_ring_ops_match_numerics(pair):
    a, b = pair
    for exact, approx in [(a + b, complex(a) + complex(b)), (a - b, complex(a) - complex(b)),
                          (a * b, complex(a) * complex(b)), (a.conj(), complex(a).conjugate())]:
        assert cmath.isclose(exact.numeric_eval(), approx, abs_tol=1e-8)


@given(cyc_pairs())
def test_equality_is_value_equality(pair):
    a, b = pair
    assert (a == b) == (a - b).is_zero()
    if a == b:
        assert hash(a) == hash(b)
    assert a.abs2().is_real()
    assert a.abs2().numeric_eval().real >= -1e-9


@given(st.integers(1, 40))
def test_euler_phi_counts_units(N):
    assert euler_phi(N) == sum(1 for a in range(1, N + 1) if math.gcd(a, N) == 1)
