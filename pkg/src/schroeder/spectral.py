"""Spectrum reports and numerical checks built on the solvers.

* ``spectrum_report``: ``{0} U {lambda_1^n}`` for Schroeder symbols and
  ``{0, 1}`` for superattracting ones, plus a compactness probe.
* ``contour_verify``: trapezoidal quadrature of the resolvent on a circle
  around ``lambda_n`` compared with ``P_n f``.
* ``automorphism_eigen_fixture``: eigenfunctions of a hyperbolic
  automorphism, ``((1+z)/(1-z))^lambda``.
* ``hardy_membership`` / ``hurst_reference``: diagnostics for powers of
  ``kappa`` in the weighted Hardy spaces with ``beta(k) = (k+1)^a``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .context import SymbolContext
from .errors import (AutomorphismSymbol, CenterMismatch, DomainError, IndexExceeded,
                     InsufficientOrder, NoInteriorFixedPoint, NotRealMultiplier,
                     ResidualTooLarge)
from .koenigs import KoenigsData, build_koenigs, continue_kappa, spiral
from .solver import OrbitKernel, residual_on_grid, split_index, verification_grid
from .symbol import (CompactnessResult, RationalMap, SymbolClassification, SymbolKind,
                     compactness_probe, conjugate_to_origin)

EIGENVALUE = "Eigenvalue"
ESSENTIAL = "EssentialPoint"


def _pair(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


@dataclass(frozen=True)
class SpectrumReport:
    classification: SymbolClassification
    spectrum_points: list
    compact: bool
    max_n: int
    compactness: CompactnessResult | None = None

    def values(self) -> list[complex]:
        return [p["value"] for p in self.spectrum_points]

    def to_json(self) -> dict:
        out = {"classification": self.classification.to_json(),
               "spectrum": [{"value": _pair(p["value"]), "kind": p["kind"]}
                            for p in self.spectrum_points],
               "compact": bool(self.compact),
               "max_n": self.max_n}
        if self.compactness is not None:
            out["compactness"] = self.compactness.to_json()
        return out


def spectrum_report(ctx: SymbolContext, max_n: int | None = None) -> SpectrumReport:
    """Spectrum of ``C_phi`` on the holomorphic functions of the disc."""
    max_n = ctx.max_n if max_n is None else max_n
    cls = ctx.classification
    if cls.kind is SymbolKind.AUTOMORPHISM:
        raise AutomorphismSymbol(
            "automorphisms have every nonzero complex number as an eigenvalue; "
            "no discrete spectrum to report")
    if cls.kind is SymbolKind.NO_INTERIOR_FIXED_POINT:
        raise NoInteriorFixedPoint("symbol has no fixed point inside the disc")
    points = [{"value": 0j, "kind": ESSENTIAL}]
    if cls.kind is SymbolKind.SUPERATTRACTING:
        points.append({"value": 1 + 0j, "kind": EIGENVALUE})
    else:
        lam = cls.multiplier
        points += [{"value": complex(lam ** n), "kind": EIGENVALUE} for n in range(max_n + 1)]
    probe = compactness_probe(ctx.symbol, tol=ctx.tol)
    return SpectrumReport(cls, points, probe.compact, max_n, probe)


# ------------------------------------------------------------------ contour


def default_contour_radius(ctx: SymbolContext, n: int) -> float:
    """Half the distance from ``lambda_n`` to 0 and to its neighbours."""
    lam1 = ctx.lambda1
    ln = lam1 ** n
    gaps = [abs(ln - lam1 ** k) for k in range(ctx.max_n + 3) if k != n]
    return 0.5 * min(min(gaps), abs(ln))


def contour_verify(ctx: SymbolContext, n: int, f, z, nodes: int = 256,
                   radius: float | None = None) -> dict:
    """Quadrature of ``(lambda I - C_phi)^{-1} f`` around ``lambda_n`` vs ``P_n f``.

    The integrand is evaluated at all ``nodes`` points of the circle in one
    batched orbit sum; every node's solution is residual-checked on the
    standard verification grid.
    """
    if not 0 <= n <= ctx.max_n:
        raise IndexExceeded(f"projection index {n} outside 0..{ctx.max_n}")
    if nodes < 64:
        raise DomainError("use at least 64 quadrature nodes")
    ln = ctx.lambda1 ** n
    eps_c = default_contour_radius(ctx, n) if radius is None else float(radius)
    theta = 2 * np.pi * np.arange(nodes) / nodes
    lams = ln + eps_c * np.exp(1j * theta)
    kernel = OrbitKernel(ctx, f, split_index(ctx, abs(ln) - eps_c))

    zs = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    vals = kernel.values(zs, lams)
    quad = np.mean(vals * (lams - ln)[:, None], axis=0)

    grid = verification_grid(ctx, f)
    both = kernel.values(np.concatenate([grid, ctx.symbol(grid)]), lams)
    res, scale = residual_on_grid(lams, both[:, : grid.size], both[:, grid.size:], f(grid))
    worst = float(np.max(res / scale))
    if worst > ctx.tol.solver_residual_tol:
        raise ResidualTooLarge(f"relative resolvent residual {worst:.3g} at a quadrature node",
                               {"relative_residual": worst})

    psi = ctx.projections.psi(n, f.taylor_at(ctx.alpha, ctx.order))
    direct = psi * continue_kappa(ctx.koenigs, ctx.symbol, zs) ** n
    err = np.abs(quad - direct)
    return {"n": n, "nodes": nodes, "radius": eps_c, "z": zs, "quadrature": quad,
            "direct": direct, "error": float(np.max(err)), "errors": err,
            "max_node_relative_residual": worst}


# -------------------------------------------------------------- automorphism


def hyperbolic_automorphism(r: float):
    return lambda z: (z + r) / (1 + r * z)


def principal_power_eigenfunction(lam: complex):
    """``g_lambda(z) = exp(lambda * Log((1+z)/(1-z)))``, principal branch."""
    def g(z):
        z = np.asarray(z, dtype=np.complex128)
        return np.exp(lam * np.log((1 + z) / (1 - z)))
    return g


def automorphism_eigen_fixture(r: float, lambda_exponent: complex, grid=None) -> float:
    """``max |g_lambda(psi(z)) - ((1+r)/(1-r))^lambda g_lambda(z)|`` over the grid."""
    if not 0 < r < 1:
        raise DomainError("r must lie in (0, 1)")
    grid = spiral(200, 0.8) if grid is None else np.asarray(grid, dtype=np.complex128)
    lam = complex(lambda_exponent)
    g = principal_power_eigenfunction(lam)
    factor = np.exp(lam * np.log((1 + r) / (1 - r)))
    return float(np.max(np.abs(g(hyperbolic_automorphism(r)(grid)) - factor * g(grid))))


# ------------------------------------------------------------ weighted Hardy


@dataclass(frozen=True)
class WeightedHardyParams:
    """Weight ``beta(k) = (k+1)^a``; ``a = 0`` is the classical Hardy space."""
    a: float
    truncation_K: int = 4096

    def __post_init__(self):
        if self.a > 0:
            raise DomainError("the weight exponent must be <= 0")
        if self.truncation_K < 1000:
            raise DomainError("truncation_K must be at least 1000")

    def beta(self, k):
        return (np.asarray(k, dtype=float) + 1.0) ** self.a


def koenigs_for_hardy(symbol: RationalMap, K: int = 4096, max_power: int = 3,
                      tol: Tolerances = DEFAULT_TOLERANCES) -> KoenigsData:
    """Koenigs data about the origin at high order.

    Weighted Hardy norms are taken about 0.  When the fixed point is
    elsewhere the symbol is first conjugated by the involution swapping it
    with 0; composition with a disc automorphism preserves membership in
    these spaces, so the verdict carries over.
    """
    ctx = SymbolContext(symbol, tol=tol)
    m = symbol if ctx.alpha == 0 else ctx.conjugated
    return build_koenigs(m, order=K, max_power=max_power, tol=tol)


def hardy_membership(kd: KoenigsData, p: int, params: WeightedHardyParams,
                     growth_margin: float = DEFAULT_TOLERANCES.growth_margin) -> dict:
    """Growth of ``|coeff_k(kappa^p)|^2 (k+1)^(2a)`` and a membership verdict.

    ``growth_exponent`` is the least-squares slope of the log of the per-term
    contributions (averaged in log-spaced bins over ``[K/8, K]``) against
    ``log k``; the series is declared convergent when the slope is below
    ``-1 - growth_margin``.  Values near ``-1`` are undecidable from finitely
    many coefficients.
    """
    K = params.truncation_K
    if kd.alpha != 0:
        raise CenterMismatch("weighted Hardy norms need kappa about the origin")
    if kd.order < K:
        raise InsufficientOrder(f"kappa known to order {kd.order} < K = {K}")
    if not 1 <= p <= kd.max_power:
        raise InsufficientOrder(f"kappa^{p} not built (max power {kd.max_power})")
    c = kd.kappa_powers[p].coeffs[: K + 1]
    k = np.arange(K + 1)
    terms = np.abs(c) ** 2 * params.beta(k) ** 2
    cums = np.cumsum(terms)
    marks = [K // 8, K // 4, K // 2, K]
    partial = [float(cums[m]) for m in marks]

    edges = np.unique(np.round(np.geomspace(K // 8, K + 1, 33)).astype(int))
    xs, ys = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        mean = float(np.mean(terms[lo:hi]))
        if mean > 0:
            xs.append(np.log(0.5 * (lo + hi - 1)))
            ys.append(np.log(mean))
    if len(xs) < 2:
        slope = -np.inf  # kappa^p is (numerically) a polynomial
    else:
        slope = float(np.polyfit(xs, ys, 1)[0])
    return {"p": p, "a": params.a, "K": K, "partial_norms": partial,
            "partial_at": marks, "growth_exponent": slope,
            "member": bool(slope < -1 - growth_margin)}


def hurst_reference(ctx: SymbolContext, a: float, max_n: int | None = None) -> dict:
    """Reference essential radius ``lambda_1^((2|a|+1)/2)`` and the eigenvalues above it.

    A reported formula only: the essential spectrum of the restriction is
    not computed.
    """
    max_n = ctx.max_n if max_n is None else max_n
    if ctx.kind is not SymbolKind.SCHROEDER:
        raise NotRealMultiplier(f"symbol is {ctx.kind.value}")
    lam = ctx.lambda1
    if abs(lam.imag) > 1e-12 or not 0 < lam.real < 1:
        raise NotRealMultiplier(f"multiplier {lam} is not real in (0, 1)")
    lam1 = lam.real
    r_e = lam1 ** ((2 * abs(a) + 1) / 2)
    outside = [lam1 ** n for n in range(max_n + 1) if lam1 ** n > r_e]
    return {"a": a, "lambda1": lam1, "essential_radius": r_e, "eigenvalues_outside": outside}
