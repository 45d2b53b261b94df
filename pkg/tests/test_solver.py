import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from conftest import EXAMPLE_A, EXAMPLE_B, HALF, random_rational_function, schroeder_symbols
from schroeder.checks import coefficient_gap
from schroeder.config import DEFAULT_TOLERANCES
from schroeder.context import SymbolContext
from schroeder.errors import (EigenvalueCollision, IncompatibleRHS, LambdaTooSmall,
                              ResidualTooLarge, SpectrumPoint, ZeroLambda)
from schroeder.functions import RationalFunction, SeriesFunction
from schroeder.koenigs import continue_kappa, spiral
from schroeder.series import TruncatedPowerSeries, _truncated_product
from schroeder.solver import (OutputMode, SolveRequest, resolve, resolve_at_eigenvalue,
                              resolve_superattracting, verification_grid)
from schroeder.symbol import RationalMap

SERIES = OutputMode.SERIES
KAPPA_A = RationalFunction([0, 1], [1, -1])         # z/(1-z), Koenigs map of z/(2-z)
KAPPA_A2 = RationalFunction([0, 0, 1], [1, -2, 1])


def triangular_oracle(ctx, lam, g):
    """Coefficients of f about alpha from lambda f_j - sum_i f_i [w^j] h^i = g_j."""
    N = ctx.order
    h = ctx.phi_series.coeffs.copy()
    h[0] = 0
    gs = g.taylor_at(ctx.alpha, N).coeffs
    H = np.zeros((N + 1, N + 1), dtype=complex)   # H[i, j] = [w^j] h^i
    p = np.zeros(N + 1, dtype=complex); p[0] = 1
    for i in range(N + 1):
        H[i] = p
        p = _truncated_product(p, h, N + 1)
    f = np.zeros(N + 1, dtype=complex)
    for j in range(N + 1):
        f[j] = (gs[j] + H[:j, j] @ f[:j]) / (lam - H[j, j])
    return TruncatedPowerSeries(f, ctx.alpha)


def test_zero_rhs():
    ctx = SymbolContext(EXAMPLE_B)
    r = resolve(SolveRequest(ctx, 0.7 + 0.2j, RationalFunction([0.0])))
    assert np.all(r(spiral(20, 0.9)) == 0)
    assert r.diagnostics["residual"] == 0


def test_linear_symbol_example():
    ctx = SymbolContext(HALF)
    r = resolve(SolveRequest(ctx, 2.0, RationalFunction([0, 1]), SERIES))
    assert abs(r(0.6) - 0.4) < 1e-14
    assert np.allclose(r.f_series.coeffs[:3], [0, 2 / 3, 0], atol=1e-14)


def test_eigenvector_rhs_example():
    ctx = SymbolContext(EXAMPLE_A)
    r = resolve(SolveRequest(ctx, 3.0, KAPPA_A2, SERIES))
    z = spiral(50, 0.75)
    assert np.max(np.abs(r(z) - KAPPA_A2(z) / 2.75)) < 1e-10
    assert r.diagnostics["residual"] < 1e-10


def test_errors():
    ctx = SymbolContext(EXAMPLE_A)
    with pytest.raises(ZeroLambda):
        SolveRequest(ctx, 0, KAPPA_A)
    with pytest.raises(EigenvalueCollision):
        resolve(SolveRequest(ctx, 0.25 + 1e-11, KAPPA_A))
    with pytest.raises(LambdaTooSmall):
        resolve(SolveRequest(ctx, 1e-6, KAPPA_A))
    strict = SymbolContext(EXAMPLE_A, tol=DEFAULT_TOLERANCES.replace(solver_residual_tol=1e-40))
    with pytest.raises(ResidualTooLarge) as info:
        resolve(SolveRequest(strict, 0.7, RationalFunction([1, 2], [3, -1])))
    assert "terms_summed" in info.value.diagnostics


def test_eigenvalue_examples():
    ctx = SymbolContext(EXAMPLE_A)
    r = resolve_at_eigenvalue(ctx, 0, KAPPA_A, SERIES)
    z = spiral(50, 0.75)
    assert np.max(np.abs(r(z) - 2 * KAPPA_A(z))) < 1e-10
    with pytest.raises(IncompatibleRHS):
        resolve_at_eigenvalue(ctx, 2, KAPPA_A2)
    rng = np.random.default_rng(4)
    c = rng.normal(size=65) + 1j * rng.normal(size=65)
    c[:3] = 0
    c *= 0.5 ** np.arange(65)
    g = SeriesFunction(TruncatedPowerSeries(c))
    r = resolve_at_eigenvalue(ctx, 2, g, SERIES)
    assert r.diagnostics["residual"] < 1e-8
    assert np.max(np.abs(r.f_series.coeffs[:3])) < 1e-9
    assert abs(ctx.projections.psi(2, r.f_series)) < 1e-9


def test_superattracting_examples():
    ctx = SymbolContext(RationalMap([0, 0, 1]))
    r = resolve_superattracting(ctx, 3, RationalFunction([1.0]))
    assert abs(r(0.3) - 0.5) < 1e-15 and r.diagnostics["residual"] == 0
    r = resolve_superattracting(ctx, 2, RationalFunction([0, 1]), SERIES)
    brute = sum(0.5 ** (2 ** k) / 2 ** (k + 1) for k in range(12))
    assert abs(r(0.5) - brute) < 1e-14
    assert r.diagnostics["residual"] < 1e-10
    zero = resolve_superattracting(ctx, 2, RationalFunction([0.0]))
    assert zero(0.4) == 0
    for lam in (0, 1, 1 + 1e-12):
        with pytest.raises(SpectrumPoint):
            resolve_superattracting(ctx, lam, RationalFunction([1.0]))


def test_verification_grid_shapes():
    ctx = SymbolContext(EXAMPLE_B)
    g = verification_grid(ctx, KAPPA_A)
    assert g.size == 50 and np.max(np.abs(g)) <= 0.75
    s = verification_grid(ctx, SeriesFunction(TruncatedPowerSeries([1, 2])))
    assert np.max(np.abs(s - ctx.alpha)) < ctx.eval_radius


lams = st.floats(0.3, 2.5).flatmap(
    lambda r: st.floats(0, 2 * np.pi).map(lambda t: complex(r * np.cos(t), r * np.sin(t))))


def assume_off_spectrum(ctx, *values):
    """Discard draws where the resolvent is ill conditioned."""
    eigs = ctx.lambda1 ** np.arange(40)
    for v in values:
        assume(np.min(np.abs(v - eigs)) > 0.05)


@settings(max_examples=12, deadline=None)
@given(schroeder_symbols(), lams, st.integers(0, 2 ** 31))
def test_series_mode_matches_triangular_oracle(m, lam, seed):
    ctx = SymbolContext(m)
    assume_off_spectrum(ctx, lam)
    g = random_rational_function(np.random.default_rng(seed))
    r = resolve(SolveRequest(ctx, lam, g, SERIES))
    oracle = triangular_oracle(ctx, lam, g)
    scale = max(1.0, float(np.max(np.abs(oracle.coeffs) * (1 - abs(ctx.alpha)) ** np.arange(65))))
    assert coefficient_gap(r.f_series, oracle, scale) < 1e-9
    # series values agree with the pointwise evaluator near alpha
    z = ctx.alpha + 0.9 * ctx.eval_radius * spiral(30)
    assert np.max(np.abs(r.f_series(z) - r(z))) < 1e-8 * scale


@settings(max_examples=10, deadline=None)
@given(schroeder_symbols(), lams, st.integers(0, 2 ** 31))
def test_linearity(m, lam, seed):
    ctx = SymbolContext(m)
    assume_off_spectrum(ctx, lam)
    rng = np.random.default_rng(seed)
    g, h = random_rational_function(rng), random_rational_function(rng)
    a, b = 0.7 - 0.2j, -1.3
    z = spiral(30, 0.9)

    class Combo:
        def __call__(self, w):
            w = np.asarray(w, dtype=complex)
            return a * g(w) + b * h(w)

        def taylor_at(self, c, order):
            return g.taylor_at(c, order) * a + h.taylor_at(c, order) * b

    lhs = resolve(SolveRequest(ctx, lam, Combo()))(z)
    rhs = a * resolve(SolveRequest(ctx, lam, g))(z) + b * resolve(SolveRequest(ctx, lam, h))(z)
    assert np.max(np.abs(lhs - rhs)) < 1e-9 * max(1.0, np.max(np.abs(rhs)))


@settings(max_examples=8, deadline=None)
@given(schroeder_symbols(), lams, lams, st.integers(0, 2 ** 31))
def test_first_resolvent_identity(m, lam, mu, seed):
    ctx = SymbolContext(m)
    assume(abs(lam - mu) > 1e-3)
    assume_off_spectrum(ctx, lam, mu)
    g = random_rational_function(np.random.default_rng(seed))
    r_mu = resolve(SolveRequest(ctx, mu, g, SERIES)).as_function()
    lhs_l = resolve(SolveRequest(ctx, lam, g))
    z = spiral(30, 0.9)
    rr = resolve(SolveRequest(ctx, lam, r_mu))(z)
    lhs = lhs_l(z) - r_mu(z)
    assert np.max(np.abs(lhs - (mu - lam) * rr)) < 1e-7 * max(1.0, np.max(np.abs(lhs)))


@settings(max_examples=10, deadline=None)
@given(schroeder_symbols(), st.integers(0, 5), lams)
def test_eigenvector_consistency(m, n, lam):
    ctx = SymbolContext(m)
    assume_off_spectrum(ctx, lam)
    kd = ctx.koenigs
    kn = ctx.koenigs.kappa_powers[n]

    class KappaPower:
        def __call__(self, w):
            return continue_kappa(kd, m, np.asarray(w, dtype=complex)) ** n

        def taylor_at(self, c, order):
            return kn

    z = ctx.alpha + 0.9 * ctx.eval_radius * spiral(20)
    f = resolve(SolveRequest(ctx, lam, KappaPower()))
    expect = kn(z) / (lam - ctx.lambda1 ** n)
    assert np.max(np.abs(f(z) - expect)) < 1e-9 * max(1.0, np.max(np.abs(expect)))
