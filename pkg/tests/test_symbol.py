import numpy as np
import pytest
from hypothesis import given, settings

from conftest import EXAMPLE_A, EXAMPLE_B, HALF, schroeder_symbols
from schroeder.errors import NearUnitMultiplier, NotSelfMap, PoleInDisc
from schroeder.symbol import (RationalMap, SymbolKind, classify, compactness_probe,
                              conjugate_by_involution, conjugate_to_origin, eval_map,
                              find_interior_fixed_point, involution, iterate, taylor_at)


def test_eval_map_examples():
    assert eval_map(EXAMPLE_A, 0) == 0
    assert eval_map(EXAMPLE_A, 1) == pytest.approx(1)
    ident = RationalMap([0, 1])
    assert eval_map(ident, 0.3 + 0.2j) == pytest.approx(0.3 + 0.2j)


def test_taylor_examples():
    assert np.allclose(taylor_at(EXAMPLE_A, 0, 3).coeffs, [0, 0.5, 0.25, 0.125])
    assert np.allclose(taylor_at(EXAMPLE_B, 0, 1).coeffs, [0, 0.5])
    assert np.allclose(taylor_at(RationalMap([0.3]), 0, 3).coeffs, [0.3, 0, 0, 0])


def test_fixed_point_examples():
    assert abs(find_interior_fixed_point(EXAMPLE_A)) < 1e-12
    assert abs(find_interior_fixed_point(HALF)) < 1e-12
    moved = conjugate_by_involution(EXAMPLE_A, 0.4)
    assert abs(find_interior_fixed_point(moved) - 0.4) < 1e-12
    assert abs(moved(0.4) - 0.4) < 1e-12


def test_classify_examples():
    auto = classify(RationalMap([0.5, 1], [1, 0.5]))
    assert auto.kind is SymbolKind.AUTOMORPHISM
    b = classify(EXAMPLE_B)
    assert b.kind is SymbolKind.SCHROEDER
    assert abs(b.alpha) < 1e-12 and abs(b.multiplier - 0.5) < 1e-12
    sq = classify(RationalMap([0, 0, 1]))
    assert sq.kind is SymbolKind.SUPERATTRACTING and abs(sq.alpha) < 1e-12
    assert classify(RationalMap([0, 1])).kind is SymbolKind.AUTOMORPHISM


def test_no_interior_fixed_point():
    # (1+z)/2 fixes the boundary point 1 only
    assert classify(RationalMap([0.5, 0.5])).kind is SymbolKind.NO_INTERIOR_FIXED_POINT


def test_near_unit_multiplier_rejected():
    # degree 2, so not a Moebius map, but |phi'(0)| is 1 to within 1e-10
    with pytest.raises(NearUnitMultiplier):
        classify(RationalMap([0, 1 - 2e-12, 1e-12]))
    # a linear map that close to the identity is treated as the identity
    assert classify(RationalMap([0, 1 - 1e-12])).kind is SymbolKind.AUTOMORPHISM


def test_rejections():
    with pytest.raises(PoleInDisc):
        RationalMap([1], [-0.5, 1])
    with pytest.raises(NotSelfMap):
        RationalMap([0, 1.5])


def test_common_roots_cancelled():
    # z(z - 3)/(2(z - 3)) = z/2
    m = RationalMap(np.convolve([0, 1], [-3, 1]), np.convolve([2], [-3, 1]))
    assert m.degree == 1
    assert classify(m).kind is SymbolKind.SCHROEDER


def test_iterate_examples():
    assert iterate(EXAMPLE_A, 0, 0.3) == 0.3
    assert iterate(EXAMPLE_A, 2, 0.5) == pytest.approx(0.2)
    assert iterate(EXAMPLE_B, 7, 0.0) == 0


def test_conjugation_examples():
    assert conjugate_to_origin(EXAMPLE_A, 0) is EXAMPLE_A
    moved = conjugate_by_involution(EXAMPLE_B, 0.4)
    back = conjugate_to_origin(moved, 0.4)
    assert abs(back(0)) < 1e-14
    assert abs(back.derivative(0) - 0.5) < 1e-10
    grid = 0.7 * np.exp(2j * np.pi * np.arange(20) / 20)
    assert np.max(np.abs(back(grid) - EXAMPLE_B(grid))) < 1e-10
    psi = involution(0.4)
    assert abs(psi(psi(0.3 + 0.1j)) - (0.3 + 0.1j)) < 1e-15


def test_compactness_examples():
    half = compactness_probe(HALF)
    assert half.compact and half.per_radius[0.9999] == pytest.approx(0.49995)
    a = compactness_probe(EXAMPLE_A)
    assert not a.compact and a.sup_estimate == pytest.approx(1.0, abs=1e-9)
    assert compactness_probe(RationalMap([0.2, 1], [4])).compact


@settings(max_examples=25, deadline=None)
@given(schroeder_symbols(alpha_max=0.6))
def test_classification_properties(m):
    cls = classify(m)
    assert cls.kind is SymbolKind.SCHROEDER
    assert abs(m(cls.alpha) - cls.alpha) <= 1e-12
    assert 0 < abs(cls.multiplier) < 1
    conj = conjugate_to_origin(m, cls.alpha)
    c2 = classify(conj)
    assert abs(c2.alpha) < 1e-10
    assert abs(c2.multiplier - cls.multiplier) < 1e-10


@settings(max_examples=15, deadline=None)
@given(schroeder_symbols(alpha_max=0.6))
def test_self_map_on_boundary(m):
    rng = np.random.default_rng(3)
    z = np.exp(2j * np.pi * rng.uniform(size=10_000))
    assert np.max(np.abs(m(z))) < 1 + 1e-9


@settings(max_examples=15, deadline=None)
@given(schroeder_symbols())
def test_taylor_matches_finite_differences(m):
    alpha = classify(m).alpha
    h = 1e-2
    n = 16
    nodes = alpha + h * np.exp(2j * np.pi * np.arange(n) / n)
    # Cauchy-type divided differences on a small circle
    fd = np.fft.fft(m(nodes)) / n / h ** np.arange(n)
    ser = taylor_at(m, alpha, 4).coeffs
    assert np.max(np.abs(fd[:5] - ser)) < 1e-6
