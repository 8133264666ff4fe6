import math

import numpy as np
import pytest
from hypothesis import given, settings

from pstkit import Vertex, adjacency
from pstkit.oracle import (
    OracleError, decompose, fidelity, fidelity_curve, scan_pst, sweep_max, verify,
)
from conftest import family_spec, specs


def test_decompose_rejects_non_square():
    with pytest.raises(OracleError):
        decompose(np.zeros((2, 3)))


def test_decompose_rejects_asymmetric():
    with pytest.raises(OracleError):
        decompose(np.array([[0, 1], [0, 0]]))


def test_k2_fidelity_at_quarter_period(k2):
    # exp(-itA) for A = [[0,1],[1,0]] has |H_01| = |sin t|
    for t in (0.3, 1.1, math.pi / 2):
        assert fidelity(k2, 0, 1, t) == pytest.approx(abs(math.sin(t)), abs=1e-12)


def test_dihedral_claim_at_half_pi(dihedral1):
    spec = dihedral1
    u = spec.vertex_index(Vertex((0,), 0))
    v = spec.vertex_index(Vertex((4,), 0))
    assert fidelity(adjacency(spec), u, v, math.pi / 2) == pytest.approx(1.0, abs=1e-9)


def test_index_out_of_range(k2):
    with pytest.raises(IndexError):
        fidelity(k2, 0, 2, 1.0)


def test_scan_k2_single_peak(k2):
    reports = scan_pst(k2, 2 * math.pi, 1000, 0.999)
    assert [r.pair for r in reports] == [(0, 1)]
    t, f = reports[0].peaks[0]
    assert t == pytest.approx(math.pi / 2, abs=1e-8)
    assert f == pytest.approx(1.0, abs=1e-12)


def test_scan_double_triangle_has_no_peaks(double_triangle):
    assert scan_pst(double_triangle, 4 * math.pi, 1600, 0.999) == []


def test_scan_c4_antipodal(c4):
    reports = scan_pst(c4, math.pi, 500, 0.999)
    pairs = {r.pair for r in reports}
    assert pairs == {(0, 1), (2, 3)}  # antipodes share a part
    for r in reports:
        assert r.peaks[0][0] == pytest.approx(math.pi / 2, abs=1e-8)


def test_curve_requires_two_steps(k2):
    with pytest.raises(ValueError):
        fidelity_curve(k2, 0, 1, 1.0, 1)


def test_sweep_max_below_one_for_triangle(double_triangle):
    _, f = sweep_max(double_triangle, 0, 1)
    assert f < 1 - 1e-4


@settings(max_examples=40, deadline=None)
@given(specs(max_n=8))
def test_unitarity_and_symmetry(spec):
    dec = decompose(adjacency(spec))
    for t in (0.37, 1.9, 5.2):
        H = dec.transfer_matrix(t)
        assert np.allclose((np.abs(H) ** 2).sum(axis=1), 1.0, atol=1e-8)
        assert np.abs(np.abs(H) - np.abs(H).T).max() < 1e-12


@pytest.mark.parametrize("name,m", [("dihedral", 1), ("quaternion", 2)])
def test_verify_family(name, m):
    rep = verify(family_spec(name, m))
    assert rep.ok, rep.mismatches
    assert rep.summary()["by_kind"]["affirmed"]["checked"] > 0


def test_verify_k2(k2):
    assert verify(k2).ok
