"""Solutions of ``lambda f - f o phi = g``.

Away from the eigenvalues the right-hand side is split as ``g = Q_n g + g_2``.
The part in ``span{kappa^0..kappa^n}`` is solved on the diagonal,
``kappa^m -> kappa^m / (lambda - lambda_m)``, while ``g_2`` vanishes to order
``n`` at the fixed point and is handled by the Neumann-type orbit series

    f_2(z) = sum_k g_2(phi_k(z)) / lambda^(k+1),

which converges once the orbit is inside a disc where ``|phi~(u)| <= q|u|``
with ``q^(n+1) < |lambda|``.  Summing along the exactly evaluated orbit gives
``f_2`` on the whole disc, because ``lambda f_2(z) = g_2(z) + f_2(phi(z))``
holds term by term.

The orbit sum is vectorized over both evaluation points and values of
``lambda``, so quadrature of the resolvent over a contour costs one orbit per
point rather than one solve per node.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .context import SymbolContext
from .errors import (EigenvalueCollision, IncompatibleRHS, LambdaTooSmall, NonConvergence,
                     NonFinite, NotSchroeder, ResidualTooLarge, SpectrumPoint, ZeroLambda)
from .functions import SampledFunction, SeriesFunction
from .koenigs import continue_kappa, spiral
from .series import TruncatedPowerSeries, compose
from .symbol import SymbolKind

_TERM_RTOL = 1e-15
_SERIES_RTOL = 1e-14
_MAX_TERMS = 100_000
_MAX_HALVINGS = 60
_GRID_POINTS = 50
_GRID_RADIUS = 0.75


class OutputMode(str, enum.Enum):
    SERIES = "SeriesOutput"
    POINTWISE = "PointwiseOutput"


@dataclass(frozen=True)
class SolveRequest:
    context: SymbolContext
    lam: complex
    g: object
    mode: OutputMode = OutputMode.POINTWISE

    def __post_init__(self):
        if self.lam == 0:
            raise ZeroLambda("lambda = 0 lies in the spectrum; no resolvent there")


@dataclass
class SolveResult:
    f_series: TruncatedPowerSeries | None
    evaluate: object
    diagnostics: dict = field(default_factory=dict)

    def __call__(self, z):
        return self.evaluate(z)

    def as_function(self) -> SampledFunction:
        return SampledFunction(self.evaluate, self.f_series)


def verification_grid(ctx: SymbolContext, g) -> np.ndarray:
    """Fixed 50-point grid on which solutions are checked.

    Globally defined right-hand sides are checked on ``|z| <= 0.75``; a
    truncated series is only trusted near its center, so the grid then
    shrinks to a disc around the fixed point.
    """
    if isinstance(g, SeriesFunction):
        return ctx.alpha + 0.9 * ctx.eval_radius * spiral(_GRID_POINTS)
    return spiral(_GRID_POINTS, _GRID_RADIUS)


class OrbitKernel:
    """The solution operator for one right-hand side and one split index.

    ``values(z, lams)`` returns the solution for every ``lam`` at every ``z``
    (shape ``(len(lams), len(z))``).  The diagonal coefficients ``a_m`` and
    the tail ``g_2`` depend only on ``g`` and the split index ``n``.
    """

    def __init__(self, ctx: SymbolContext, g, n: int, skip: int | None = None):
        self.ctx = ctx
        self.g = g
        self.n = n
        self.skip = skip
        alpha, order = ctx.alpha, ctx.order
        self.g_series = g.taylor_at(alpha, order)
        if ctx.kind is SymbolKind.SCHROEDER:
            pf = ctx.projections
            self.a = pf.taylor_rows[: n + 1, : n + 1] @ self.g_series.coeffs[: n + 1]
            self.eigs = np.array([ctx.lambda1 ** m for m in range(n + 1)], dtype=np.complex128)
            powers = ctx.koenigs.kappa_powers
            q = self.g_series.coeffs.copy()
            for m in range(n + 1):
                q -= self.a[m] * powers[m].coeffs
        else:
            # superattracting: only the constants form an eigenline
            self.a = np.array([self.g_series.coeffs[0]])
            self.eigs = np.array([1.0 + 0j])
            q = self.g_series.coeffs.copy()
            q[0] = 0.0
        q[: n + 1] = 0.0  # exact zero of order n+1 at alpha
        self.g2_series = TruncatedPowerSeries(q, alpha)
        self._g2_tail = q[n + 1:]

    # ---------------------------------------------------------------- helpers
    def diag_coefficients(self, lams) -> np.ndarray:
        """``a_m / (lam - lambda_m)`` with the skipped index set to zero."""
        lams = np.asarray(lams, dtype=np.complex128).reshape(-1, 1)
        den = lams - self.eigs[None, :]
        num = np.broadcast_to(self.a[None, :], den.shape).copy()
        if self.skip is not None:
            den[:, self.skip] = 1.0
            num[:, self.skip] = 0.0
        return num / den

    def kappa_powers_at(self, z: np.ndarray) -> np.ndarray:
        """``kappa(z)^m`` for ``m <= n``, shape ``(n+1, len(z))``."""
        if self.ctx.kind is not SymbolKind.SCHROEDER:
            return np.ones((1, z.size), dtype=np.complex128)
        k = continue_kappa(self.ctx.koenigs, self.ctx.symbol, z)
        return k[None, :] ** np.arange(self.n + 1)[:, None]

    def _tail_factor(self, d: np.ndarray) -> np.ndarray:
        """``R(d)`` with ``g_2(alpha + d) = d^(n+1) R(d)``."""
        out = np.zeros(d.shape, dtype=np.complex128)
        for c in self._g2_tail[::-1]:
            out = out * d + c
        return out

    def contraction(self, lam_min: float) -> tuple[float, float]:
        """Largest ``eps = 0.5/2^j`` whose ``q`` makes the tail contract."""
        margin = self.ctx.tol.q_margin
        for j in range(_MAX_HALVINGS):
            eps, q = self.ctx.contraction_level(j)
            if q ** (self.n + 1) < lam_min * (1 - margin) and q <= 1 - margin:
                return eps, q
        raise NonConvergence("no contraction disc found around the fixed point")

    # ------------------------------------------------------------ evaluation
    def values(self, z, lams, return_info: bool = False):
        z = np.asarray(z, dtype=np.complex128).reshape(-1)
        lams = np.asarray(lams, dtype=np.complex128).reshape(-1)
        ctx = self.ctx
        eps, q = self.contraction(float(np.min(np.abs(lams))))
        log_lam = np.log(lams)[:, None]
        r_near = ctx.near_radius
        phi_t = ctx.conjugated

        kp = self.kappa_powers_at(z)
        f1 = self.diag_coefficients(lams) @ kp

        total = np.zeros((lams.size, z.size), dtype=np.complex128)
        active = np.ones(z.size, dtype=bool)
        # far from alpha the orbit is followed in the original coordinate w;
        # near alpha in the conjugated coordinate u, where the fixed point is
        # exactly 0 and the orbit keeps full relative accuracy
        w = z.copy()
        u = np.array(ctx.to_conjugated(z), dtype=np.complex128)
        near = np.abs(u) < r_near
        k = 0
        lam1 = ctx.lambda1 if ctx.kind is SymbolKind.SCHROEDER else 0.0
        while np.any(active):
            if k >= _MAX_TERMS:
                raise NonConvergence(f"orbit series did not settle within {_MAX_TERMS} terms")
            idx = np.nonzero(active)[0]
            nr = near[idx]
            coef = np.zeros(idx.size, dtype=np.complex128)
            expo = np.zeros(idx.size, dtype=np.complex128)
            if np.any(nr):
                d = ctx.offset_from_conjugated(u[idx[nr]])
                nz = d != 0
                c = np.zeros(d.size, dtype=np.complex128)
                e = np.zeros(d.size, dtype=np.complex128)
                c[nz] = self._tail_factor(d[nz])
                e[nz] = (self.n + 1) * np.log(d[nz])
                coef[nr], expo[nr] = c, e
            if not np.all(nr):
                fi = idx[~nr]
                # kappa(phi_k(z)) = lambda_1^k kappa(z)
                scale = (lam1 ** k) ** np.arange(self.n + 1)[:, None]
                diag = self.a @ (scale * kp[:, fi])
                coef[~nr] = np.asarray(self.g(w[fi]), dtype=np.complex128) - diag
            term = coef[None, :] * np.exp(expo[None, :] - (k + 1) * log_lam)
            if not np.all(np.isfinite(term)):
                raise NonFinite("orbit series overflowed")
            total[:, idx] += term
            small = np.all(np.abs(term) <= _TERM_RTOL * np.maximum(1.0, np.abs(total[:, idx])),
                           axis=0)
            done = small & (np.abs(u[idx]) < eps)
            active[idx[done]] = False
            # advance the survivors
            go = idx[~done]
            gn = go[near[go]]
            gf = go[~near[go]]
            u[gn] = phi_t(u[gn])
            if gf.size:
                w[gf] = ctx.symbol(w[gf])
                u[gf] = ctx.to_conjugated(w[gf])
                near[gf] = np.abs(u[gf]) < r_near
            k += 1
        out = f1 + total
        if return_info:
            return out, {"epsilon": eps, "q": q, "terms_summed": k}
        return out

    def series(self, lam: complex) -> TruncatedPowerSeries:
        """The solution as a Taylor series about alpha."""
        ctx = self.ctx
        alpha, order = ctx.alpha, ctx.order
        tol = ctx.tol.compose_center_tol
        phi_t = ctx.conjugated.taylor_at(0.0, order)
        if alpha == 0:
            g2t = self.g2_series
        else:
            g2t = compose(self.g2_series, ctx.involution.taylor_at(0.0, order), tol)
        term = g2t / lam
        total = term
        for _ in range(_MAX_TERMS):
            term = compose(term, phi_t, tol) / lam
            total = total + term
            scale = max(1.0, float(np.max(np.abs(total.coeffs))))
            if np.max(np.abs(term.coeffs)) < _SERIES_RTOL * scale:
                break
        else:
            raise NonConvergence("series-mode orbit sum did not settle")
        if alpha != 0:
            total = compose(total, ctx.involution.taylor_at(alpha, order), tol)
        diag = self.diag_coefficients([lam])[0]
        out = total.coeffs.copy()
        if ctx.kind is SymbolKind.SCHROEDER:
            powers = ctx.koenigs.kappa_powers
            for m in range(self.n + 1):
                out += diag[m] * powers[m].coeffs
        else:
            out[0] += diag[0]
        return TruncatedPowerSeries(out, alpha)


def split_index(ctx: SymbolContext, lam_abs: float) -> int:
    """Smallest ``n`` with ``|lambda_1|^(n+1) <= split_ratio * |lambda|``."""
    r = abs(ctx.lambda1)
    ratio = ctx.tol.split_ratio
    n = 0
    while r ** (n + 1) > ratio * lam_abs:
        n += 1
        if n > ctx.max_n:
            raise LambdaTooSmall(
                f"|lambda| = {lam_abs:.3g} needs more than max_n = {ctx.max_n} projections")
    return n


def residual_on_grid(lam, fz, fphi, gz) -> tuple[float, float]:
    """Max residual of ``lam f - f o phi - g`` and the size of the terms in it.

    Rounding limits the residual to about machine epsilon times the largest
    of ``|lam f|``, ``|f o phi|`` and ``|g|``, so acceptance is judged against
    ``max(1, that size)``.
    """
    fz, fphi, gz = (np.asarray(a, dtype=np.complex128) for a in (fz, fphi, gz))
    lam = np.asarray(lam, dtype=np.complex128)
    lf = lam[..., None] * fz if lam.ndim else lam * fz
    res = np.max(np.abs(lf - fphi - gz), axis=-1)
    scale = np.maximum(1.0, np.max(np.maximum(np.maximum(np.abs(lf), np.abs(fphi)),
                                              np.abs(gz)), axis=-1))
    return res, scale


def _finish(ctx, kernel, lam, mode, extra=None, kernel_index=None) -> SolveResult:
    """Package a kernel as a result, enforcing the residual check.

    With ``kernel_index = n`` the solution is shifted along ``kappa^n`` so that
    ``P_n f = 0`` holds for the series as well as for the pointwise values.
    """
    g = kernel.g
    f_series = kernel.series(lam) if mode is OutputMode.SERIES else None
    shift = 0j
    if kernel_index is not None and f_series is not None:
        shift = ctx.projections.psi(kernel_index, f_series)
        f_series = f_series - ctx.koenigs.kappa_powers[kernel_index] * shift

    def evaluate(z):
        arr = np.asarray(z, dtype=np.complex128)
        flat = arr.reshape(-1)
        out = kernel.values(flat, [lam])[0]
        if shift != 0:
            out = out - shift * kernel.kappa_powers_at(flat)[kernel_index]
        return complex(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)

    grid = verification_grid(ctx, g)
    _, info = kernel.values(grid, [lam], return_info=True)
    residual, scale = residual_on_grid(lam, evaluate(grid), evaluate(ctx.symbol(grid)), g(grid))
    residual, scale = float(residual), float(scale)
    diagnostics = {"n_used": kernel.n, **info, "residual": residual, "residual_scale": scale}
    if extra:
        diagnostics.update(extra)
    if not residual <= ctx.tol.solver_residual_tol * scale:
        raise ResidualTooLarge(f"residual {residual:.3g} exceeds "
                               f"{ctx.tol.solver_residual_tol:.3g} x {scale:.3g}", diagnostics)
    return SolveResult(f_series, evaluate, diagnostics)


def _require_schroeder(ctx: SymbolContext):
    if ctx.kind is not SymbolKind.SCHROEDER:
        raise NotSchroeder(f"symbol is {ctx.kind.value}; this solve needs a Schroeder symbol")


def resolve(req: SolveRequest) -> SolveResult:
    """``(lambda I - C_phi)^{-1} g`` for ``lambda`` off the spectrum."""
    ctx, lam = req.context, complex(req.lam)
    _require_schroeder(ctx)
    n = split_index(ctx, abs(lam))
    for k in range(n + 1):
        if abs(lam - ctx.lambda1 ** k) < ctx.tol.eigen_sep_tol:
            raise EigenvalueCollision(
                f"lambda is within {ctx.tol.eigen_sep_tol:g} of lambda_{k}; "
                "use the eigenvalue solve")
    kernel = OrbitKernel(ctx, req.g, n)
    return _finish(ctx, kernel, lam, OutputMode(req.mode))


def resolve_at_eigenvalue(ctx: SymbolContext, n: int, g,
                          mode: OutputMode = OutputMode.POINTWISE) -> SolveResult:
    """Solution of ``lambda_n f - f o phi = g`` normalized by ``P_n f = 0``.

    Solvable exactly when ``P_n g = 0``.
    """
    _require_schroeder(ctx)
    if not 0 <= n <= ctx.max_n:
        raise EigenvalueCollision(f"eigenvalue index {n} outside 0..{ctx.max_n}")
    lam = ctx.lambda1 ** n
    split = max(n, split_index(ctx, abs(lam)))
    kernel = OrbitKernel(ctx, g, split, skip=n)
    compat = float(abs(kernel.a[n]))
    if compat > ctx.tol.compat_tol:
        raise IncompatibleRHS(f"|Psi_{n}(g)| = {compat:.3g}: no solution at lambda_{n}")
    return _finish(ctx, kernel, lam, OutputMode(mode), {"compatibility": compat},
                   kernel_index=n)


def resolve_superattracting(ctx: SymbolContext, lam, g,
                            mode: OutputMode = OutputMode.POINTWISE) -> SolveResult:
    """Resolvent for a symbol whose interior fixed point has multiplier 0."""
    if ctx.kind is not SymbolKind.SUPERATTRACTING:
        raise NotSchroeder(f"symbol is {ctx.kind.value}, not superattracting")
    lam = complex(lam)
    sep = ctx.tol.eigen_sep_tol
    if abs(lam) < sep or abs(lam - 1) < sep:
        raise SpectrumPoint(f"lambda = {lam} is in the spectrum {{0, 1}}")
    kernel = OrbitKernel(ctx, g, 0)
    return _finish(ctx, kernel, lam, OutputMode(mode))


def solve(ctx: SymbolContext, lam, g, mode: OutputMode = OutputMode.POINTWISE) -> SolveResult:
    """Dispatch on the symbol kind."""
    if ctx.kind is SymbolKind.SUPERATTRACTING:
        return resolve_superattracting(ctx, lam, g, mode)
    return resolve(SolveRequest(ctx, lam, g, mode))
