"""Verification suites: residuals of the identities the toolkit relies on.

Each check yields a row ``{suite, name, value, tolerance, pass}``.  Series are
compared coefficientwise in the normalized variable ``(z - alpha)/(1 - |alpha|)``,
in which the expansion about ``alpha`` has radius of convergence at least 1;
for ``alpha = 0`` this is the plain coefficient comparison.  Identities whose
two sides are multiples of ``kappa^n`` are measured relative to the size of
``kappa^n``: the coefficients of ``kappa^n`` grow polynomially in ``k`` and
rounding error in the scalar factor grows with them.
"""

from __future__ import annotations

import numpy as np

from .context import SymbolContext
from .functions import RationalFunction
from .koenigs import spiral, verify_eigen_relation
from .projections import apply_projection, apply_Qn, closed_form_P
from .series import TruncatedPowerSeries, compose
from .spectral import contour_verify

# a fixed test function, holomorphic on a neighbourhood of the closed disc
DEFAULT_TEST_FUNCTION = RationalFunction([1.0, 0.5, 0.25, -0.3j], [2.0, -1.0])


def weighted_sup(a: TruncatedPowerSeries) -> float:
    """``max_k |a_k| (1 - |alpha|)^k``."""
    w = (1 - abs(a.center)) ** np.arange(a.order + 1)
    return float(np.max(np.abs(a.coeffs) * w))


def coefficient_gap(a: TruncatedPowerSeries, b, scale: float = 1.0) -> float:
    """``max_k |a_k - b_k| (1 - |alpha|)^k / max(1, scale)``; ``b`` may be 0."""
    diff = a.coeffs - (b.coeffs if isinstance(b, TruncatedPowerSeries) else b)
    w = (1 - abs(a.center)) ** np.arange(diff.size)
    return float(np.max(np.abs(diff) * w)) / max(1.0, scale)


def _row(suite, name, value, tolerance):
    return {"suite": suite, "name": name, "value": float(value), "tolerance": tolerance,
            "pass": bool(value <= tolerance)}


def koenigs_suite(ctx: SymbolContext, max_power: int = 8) -> list[dict]:
    kd = ctx.koenigs
    kappa, lam = kd.kappa, kd.lambda1
    t = ctx.tol
    rows = [_row("koenigs", "normalization",
                 max(abs(kappa.coeffs[0]), abs(kappa.coeffs[1] - 1)), t.normalization_tol),
            _row("koenigs", "functional_equation",
                 coefficient_gap(compose(kappa, ctx.phi_series, ctx.tol.compose_center_tol),
                                 kappa * lam), t.identity_tol)]
    top = min(max_power, kd.max_power)
    for n in range(1, min(top, 4) + 1):
        rows.append(_row("koenigs", f"eigen_relation_{n}", verify_eigen_relation(kd, ctx.symbol, n),
                         t.check_tol))
    low = 0.0
    for n in range(1, top + 1):
        c = kd.kappa_powers[n].coeffs
        low = max(low, float(np.max(np.abs(c[:n]), initial=0.0)), abs(c[n] - 1))
    rows.append(_row("koenigs", "power_leading_terms", low, t.check_tol))
    return rows


def projection_suite(ctx: SymbolContext, f=None, max_n: int = 6) -> list[dict]:
    pf = ctx.projections
    f = DEFAULT_TEST_FUNCTION if f is None else f
    fs = f.taylor_at(ctx.alpha, ctx.order)
    phi = ctx.phi_series
    tol = ctx.tol.compose_center_tol
    lam1 = ctx.lambda1
    t = ctx.tol
    top = min(max_n, pf.max_n)
    fphi = compose(fs, phi, tol)
    inter_l = inter_r = ortho = interp = dual = 0.0
    proj = [apply_projection(pf, n, fs) for n in range(top + 1)]
    for n in range(top + 1):
        ln = lam1 ** n
        size = weighted_sup(ctx.koenigs.kappa_powers[n])
        inter_l = max(inter_l, coefficient_gap(apply_projection(pf, n, fphi), proj[n] * ln, size))
        inter_r = max(inter_r, coefficient_gap(compose(proj[n], phi, tol), proj[n] * ln, size))
        dual = max(dual, abs(pf.psi(n, fphi) - ln * pf.psi(n, fs)))
        for m in range(top + 1):
            target = proj[n] if m == n else 0.0
            ortho = max(ortho, coefficient_gap(apply_projection(pf, n, proj[m]), target, size))
        q = apply_Qn(pf, n, fs)
        interp = max(interp, float(np.max(np.abs(q.coeffs[: n + 1] - fs.coeffs[: n + 1]))))
    d2 = 2 * phi.coeffs[2]
    d3 = 6 * phi.coeffs[3]
    closed = 0.0
    for n in range(min(3, pf.max_n) + 1):
        ref = closed_form_P(n, lam1, d2, d3, ctx.tol.small_divisor_tol)
        closed = max(closed, float(np.max(np.abs(pf.functionals[n] - ref) / np.maximum(1, np.abs(ref)))))
    return [_row("projections", "intertwining_left", inter_l, t.check_tol),
            _row("projections", "intertwining_right", inter_r, t.check_tol),
            _row("projections", "orthogonality", ortho, t.check_tol),
            _row("projections", "interpolation", interp, t.identity_tol),
            _row("projections", "duality", dual, t.check_tol),
            _row("projections", "closed_forms", closed, t.identity_tol)]


def contour_suite(ctx: SymbolContext, f=None, max_n: int = 4, nodes: int = 256) -> list[dict]:
    f = DEFAULT_TEST_FUNCTION if f is None else f
    z = ctx.alpha + 0.5 * (1 - abs(ctx.alpha)) * spiral(5)
    rows = []
    for n in range(min(max_n, ctx.max_n) + 1):
        res = contour_verify(ctx, n, f, z, nodes=nodes)
        rows.append(_row("contour", f"P{n}", res["error"], ctx.tol.contour_tol))
    return rows


SUITES = {"koenigs": koenigs_suite, "projections": projection_suite, "contour": contour_suite}


def run_suites(ctx: SymbolContext, suite: str = "all") -> list[dict]:
    names = list(SUITES) if suite == "all" else [suite]
    rows = []
    for name in names:
        rows.extend(SUITES[name](ctx))
    return rows
