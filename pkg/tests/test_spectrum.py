import math

import numpy as np
import pytest
from hypothesis import given, settings

from pstkit import BiCayleySpec, Vertex, adjacency, eigenvalues, is_integral, transfer_entry
from pstkit.oracle import decompose
from pstkit.spectrum import (
    character_sums, eigenvalue_multiset, is_weakly_inner_cospectral, xi_coefficients,
)

from conftest import family_spec, specs

PENTAGONS = BiCayleySpec.build([5], [1, 4], [1, 4], [])


@pytest.mark.parametrize("m", [1, 2, 3])
def test_dihedral_character_sums(m):
    # published: chi_k(R) = 4m, -4m or 0; chi_k(T) cycles 2, 0, -2, 0
    sums = character_sums(family_spec("dihedral", m))
    n = 8 * m
    for c, s in enumerate(sums):
        expect_r = 4 * m if c == 0 else -4 * m if c == 4 * m else 0
        assert s.sR == expect_r and s.sL == expect_r
        assert s.sT == [2, 0, -2, 0][c % 4]
    assert len(sums) == n


@pytest.mark.parametrize("m", [1, 2, 3])
def test_dihedral_eigenvalue_table(m):
    # published table, 1-based k: lambda pairs: (4m-2, 4m+2), (-4m-2, -4m+2), (0, 0) for even k, (-2, 2) otherwise
    for c, p in enumerate(eigenvalues(family_spec("dihedral", m))):
        if c == 0:
            expected = (4 * m - 2, 4 * m + 2)
        elif c == 4 * m:
            expected = (-4 * m - 2, -4 * m + 2)
        elif c % 2:
            expected = (0, 0)
        else:
            expected = (-2, 2)
        assert (p.lo_exact, p.hi_exact) == expected


def test_k2_spectrum(k2):
    (p,) = eigenvalues(k2)
    assert (p.lo_exact, p.hi_exact) == (-1, 1)
    assert character_sums(k2)[0].sT == 1


def test_empty_t_gives_zero_sums(double_triangle):
    assert all(s.sT.is_zero() for s in character_sums(double_triangle))


def test_pentagons_are_not_integral():
    assert not is_integral(PENTAGONS)
    p = eigenvalues(PENTAGONS)[1]
    assert not p.exact
    assert p.lo == pytest.approx(2 * math.cos(2 * math.pi / 5))


def test_integrality_flags(k2, dihedral1):
    assert is_integral(k2) and is_integral(dihedral1)


def test_xi_cases(k2):
    (x,) = xi_coefficients(k2)
    assert x.case == "T_NONZERO"
    assert x.xi[0] == pytest.approx(-1)
    assert x.xi_hat[0] == pytest.approx(-1 / math.sqrt(2))
    spec = BiCayleySpec.build([3], [1, 2], [], [])
    xs = xi_coefficients(spec)
    assert xs[0].case == "T_ZERO_R_GT_L" and xs[0].xi == (0, 1, 1, 0)
    assert xs[1].case == "T_ZERO_R_LE_L" and xs[1].xi == (1, 0, 0, 1)


def test_weak_inner_cospectrality():
    assert is_weakly_inner_cospectral(family_spec("dihedral", 1))
    spec = BiCayleySpec.build([4], [1, 3], [2], [1])
    # chi_k(T) = i^k never vanishes, so both restricted multisets are empty
    assert is_weakly_inner_cospectral(spec)
    spec = BiCayleySpec.build([4], [1, 3], [2], [0, 2])
    # characters 1 and 3 vanish on T: chi(R) = {0, 0}, chi(L) = {-1, -1}
    assert not is_weakly_inner_cospectral(spec)


def test_transfer_entry_identity_at_zero(dihedral1):
    for v in dihedral1.vertices()[:5]:
        assert transfer_entry(dihedral1, v, v, 0.0) == pytest.approx(1.0)


def test_transfer_entry_examples(k2, dihedral1):
    assert transfer_entry(k2, Vertex((0,), 0), Vertex((0,), 1), math.pi / 2) == pytest.approx(-1j)
    h = transfer_entry(dihedral1, Vertex((0,), 0), Vertex((4,), 0), math.pi / 2)
    assert abs(h) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=80, deadline=None)
@given(specs())
def test_spectrum_matches_eigh(spec):
    exact = eigenvalue_multiset(spec)
    numeric = np.linalg.eigvalsh(adjacency(spec).astype(float))
    assert np.allclose(exact, numeric, atol=1e-9)
    for s, p in zip(character_sums(spec), eigenvalues(spec)):
        assert s.sR.is_real() and s.sL.is_real()
        assert p.lo <= p.hi
        if p.exact:
            assert (s.sR + s.sL) == p.lo_exact + p.hi_exact


@settings(max_examples=60, deadline=None)
@given(specs(max_n=10))
def test_transfer_entry_matches_oracle(spec):
    dec = decompose(adjacency(spec))
    for t in (0.4, 2.3, 7.1):
        H = dec.transfer_matrix(t)
        for v in spec.vertices():
            for u in spec.vertices()[:: max(1, spec.n // 3)]:
                got = transfer_entry(spec, u, v, t)
                assert abs(got - H[spec.vertex_index(u), spec.vertex_index(v)]) < 1e-9


@settings(max_examples=60, deadline=None)
@given(specs())
def test_xi_hat_normalized(spec):
    for x in xi_coefficients(spec):
        assert abs(x.xi_hat[0]) ** 2 + abs(x.xi_hat[2]) ** 2 == pytest.approx(1.0)
        assert abs(x.xi_hat[1]) ** 2 + abs(x.xi_hat[3]) ** 2 == pytest.approx(1.0)
