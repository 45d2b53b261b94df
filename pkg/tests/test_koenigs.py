import numpy as np
import pytest
from hypothesis import given, settings

from conftest import EXAMPLE_A, EXAMPLE_B, HALF, schroeder_symbols
from schroeder.checks import coefficient_gap
from schroeder.errors import NonConvergence, NotSchroeder, SmallDivisor
from schroeder.koenigs import (build_koenigs, continue_kappa, kappa_zero_check,
                               koenigs_coefficients, spiral, verify_eigen_relation)
from schroeder.series import TruncatedPowerSeries, compose
from schroeder.symbol import RationalMap


def limit_oracle(m: RationalMap, alpha, lam, order=64, tol=1e-12, cap=2000):
    """kappa as the limit of psi_k = (phi_k - alpha)/lambda^k.

    Iterated as psi_{k+1} = h(lambda^k psi_k)/lambda^(k+1) with h = phi - alpha,
    i.e. phi_{k+1} = phi o phi_k, which keeps every series of size O(1)
    (dividing phi_k - alpha by lambda^k directly amplifies rounding).
    """
    h = m.taylor_at(alpha, order).coeffs.copy()
    h[0] = 0.0
    j = np.arange(1, order + 1)
    psi = TruncatedPowerSeries.identity(order, alpha) - alpha
    prev_gap = np.inf
    for k in range(cap):
        scaled = np.zeros(order + 1, dtype=np.complex128)
        scaled[1:] = h[1:] * lam ** (k * (j - 1.0)) / lam
        outer = TruncatedPowerSeries(scaled)
        nxt = compose(outer, psi)
        gap = coefficient_gap(nxt, psi)
        psi = nxt
        if gap < tol or (gap < 1e-10 and gap >= prev_gap):
            return psi
        prev_gap = gap
    raise AssertionError("limit oracle did not settle")


def test_example_a_coefficients_all_one():
    kd = build_koenigs(EXAMPLE_A, order=64)
    assert np.max(np.abs(kd.kappa.coeffs[1:] - 1)) < 1e-10
    assert kd.kappa.coeffs[0] == 0


def test_linear_map_kappa_is_identity():
    kd = build_koenigs(HALF, order=16)
    assert np.allclose(kd.kappa.coeffs, TruncatedPowerSeries.identity(16).coeffs, atol=1e-15)
    z = spiral(20, 0.5)
    assert verify_eigen_relation(kd, HALF, 3, z) == 0


def test_example_b_matches_limit_oracle():
    kd = build_koenigs(EXAMPLE_B, order=64)
    oracle = limit_oracle(EXAMPLE_B, 0.0, 0.5)
    assert coefficient_gap(kd.kappa, oracle) < 1e-8
    # first coefficients by hand: c2 = b2/(l - l^2) = (3/4)/(1/4) = 3
    assert kd.kappa.coeffs[2] == pytest.approx(3)


def test_eigen_relation_examples():
    kd = build_koenigs(EXAMPLE_A, order=64, max_power=4)
    grid = spiral(50, 0.3)
    assert verify_eigen_relation(kd, EXAMPLE_A, 1, grid) < 1e-10
    assert verify_eigen_relation(kd, EXAMPLE_A, 0, grid) == 0
    # exact identity kappa(phi(z)) = kappa(z)/2 with kappa = z/(1-z)
    k = lambda z: z / (1 - z)
    assert np.max(np.abs(k(EXAMPLE_A(grid)) - k(grid) / 2)) < 1e-15


def test_kappa_zero_check_examples():
    kb = build_koenigs(EXAMPLE_B)
    assert abs(kappa_zero_check(kb, EXAMPLE_B, -0.5)) < 1e-9
    assert kappa_zero_check(kb, EXAMPLE_B, 0.0) == 0
    ka = build_koenigs(EXAMPLE_A)
    assert abs(kappa_zero_check(ka, EXAMPLE_A, 0.9) - 9) < 1e-8


def test_pullback_cap():
    # a slowly contracting map: orbits from near the boundary need many steps
    m = RationalMap([0, 0.999])
    kd = build_koenigs(m, order=8)
    with pytest.raises(NonConvergence):
        continue_kappa(kd, m, 0.99, max_steps=5)


def test_not_schroeder_rejected():
    with pytest.raises(NotSchroeder):
        build_koenigs(RationalMap([0, 0, 1]))


def test_small_divisor_guard():
    phi = TruncatedPowerSeries([0, 1 - 1e-13, 0.1, 0])
    with pytest.raises(SmallDivisor):
        koenigs_coefficients(phi)


@settings(max_examples=10, deadline=None)
@given(schroeder_symbols())
def test_recursion_solves_functional_equation(m):
    kd = build_koenigs(m, order=64, max_power=8)
    phi = m.taylor_at(kd.alpha, 64)
    res = compose(kd.kappa, phi) - kd.kappa * kd.lambda1
    assert coefficient_gap(res, 0.0) < 1e-10
    assert abs(kd.kappa.coeffs[0]) < 1e-12 and abs(kd.kappa.coeffs[1] - 1) < 1e-12


@settings(max_examples=6, deadline=None)
@given(schroeder_symbols())
def test_recursion_matches_limit_oracle(m):
    kd = build_koenigs(m, order=64)
    oracle = limit_oracle(m, kd.alpha, kd.lambda1)
    assert coefficient_gap(kd.kappa, oracle) < 1e-8


@settings(max_examples=10, deadline=None)
@given(schroeder_symbols())
def test_powers_vanish_below_their_index(m):
    kd = build_koenigs(m, order=64, max_power=8)
    for n in range(9):
        c = kd.kappa_powers[n].coeffs
        assert np.all(np.abs(c[:n]) < 1e-9)
        assert abs(c[n] - 1) < 1e-9


@settings(max_examples=10, deadline=None)
@given(schroeder_symbols(alpha_max=0.5))
def test_pullback_consistent(m):
    kd = build_koenigs(m, order=64)
    z = spiral(30, 0.9)
    a = continue_kappa(kd, m, z)
    b = continue_kappa(kd, m, z, extra_steps=1)
    assert np.max(np.abs(a - b)) < 1e-9 * max(1.0, np.max(np.abs(a)))
