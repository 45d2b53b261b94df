"""Koenigs eigenfunction of a Schroeder symbol.

``kappa`` is the unique holomorphic solution of ``kappa o phi = lambda_1 kappa``
with ``kappa(alpha) = 0`` and ``kappa'(alpha) = 1``.  Its Taylor coefficients
about ``alpha`` follow from a triangular recursion: writing
``phi = alpha + h`` with ``h = sum_{k>=1} b_k w^k`` (``w = z - alpha``),

    c_n (lambda_1 - lambda_1^n) = sum_{k<n} c_k [w^n] h^k,

so each coefficient only needs the earlier ones.  Away from ``alpha`` the
series is continued by pulling points back along their orbit,
``kappa(z) = kappa(phi_j(z)) / lambda_1^j``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_ORDER, DEFAULT_TOLERANCES, EVAL_RADIUS_FACTOR, Tolerances
from .errors import NonConvergence, NotSchroeder, NumericalFailure, SmallDivisor
from .series import _FFT_THRESHOLD, TruncatedPowerSeries, _truncated_product
from .symbol import RationalMap, SymbolClassification, SymbolKind, classify

_PULLBACK_CAP = 10_000


@dataclass(frozen=True)
class KoenigsData:
    alpha: complex
    lambda1: complex
    kappa: TruncatedPowerSeries
    kappa_powers: tuple
    eval_radius: float

    @property
    def order(self) -> int:
        return self.kappa.order

    @property
    def max_power(self) -> int:
        return len(self.kappa_powers) - 1

    def eigenvalue(self, n: int) -> complex:
        return self.lambda1 ** n

    def eigenvalues(self, max_n: int) -> list[complex]:
        return [self.lambda1 ** n for n in range(max_n + 1)]


def koenigs_coefficients(phi_series: TruncatedPowerSeries,
                         small_divisor_tol: float = DEFAULT_TOLERANCES.small_divisor_tol) -> np.ndarray:
    """Taylor coefficients of ``kappa`` about the fixed point ``phi_series.center``."""
    N = phi_series.order
    if N == 0:
        return np.zeros(1, dtype=np.complex128)
    # c_n is a heavily cancelling sum of c_k [w^n] h^k, so rounding in the
    # earlier c_k is amplified; extended precision absorbs this at moderate
    # orders.  The FFT products used at high order run in double precision.
    dtype = np.clongdouble if N + 1 < _FFT_THRESHOLD else np.complex128
    h = phi_series.coeffs.astype(dtype)
    h[0] = 0.0
    lam = h[1]
    c = np.zeros(N + 1, dtype=dtype)
    c[1] = 1.0
    # acc[n] = sum over computed k of c_k [w^n] h^k
    acc = h.copy()
    hk = h.copy()
    lam_n = lam
    for n in range(2, N + 1):
        lam_n = lam_n * lam
        d = lam - lam_n
        if abs(d) < small_divisor_tol:
            raise SmallDivisor(f"|lambda_1 - lambda_1^{n}| = {abs(d):.3g}")
        c[n] = acc[n] / d
        hk = _truncated_product(hk, h, N + 1)
        acc[n:] += c[n] * hk[n:]
    return c.astype(np.complex128)


def build_koenigs(symbol: RationalMap, order: int = DEFAULT_ORDER, max_power: int | None = None,
                  classification: SymbolClassification | None = None,
                  tol: Tolerances = DEFAULT_TOLERANCES) -> KoenigsData:
    """Koenigs eigenfunction and its powers ``kappa^0 .. kappa^max_power``."""
    cls = classification or classify(symbol, tol)
    if cls.kind is not SymbolKind.SCHROEDER:
        raise NotSchroeder(f"symbol is {cls.kind.value}, not Schroeder")
    alpha, lam = cls.alpha, cls.multiplier
    if max_power is None:
        max_power = min(order, 16)
    phi_s = symbol.taylor_at(alpha, order)
    kappa = TruncatedPowerSeries(koenigs_coefficients(phi_s, tol.small_divisor_tol), alpha)
    powers = [TruncatedPowerSeries.constant(1.0, order, alpha)]
    for _ in range(max_power):
        powers.append(powers[-1] * kappa)
    for n, s in enumerate(powers):
        scale = max(1.0, float(np.max(np.abs(s.coeffs))))
        low = np.max(np.abs(s.coeffs[:min(n, order + 1)]), initial=0.0)
        lead = abs(s.coeffs[n] - 1) if n <= order else 0.0
        if max(low, lead) > 1e-10 * scale:
            raise NumericalFailure(f"kappa^{n} lost its normalization")
    radius = EVAL_RADIUS_FACTOR * (1 - abs(alpha))
    return KoenigsData(alpha, lam, kappa, tuple(powers), radius)


def continue_kappa(kd: KoenigsData, symbol: RationalMap, z, extra_steps: int = 0,
                   max_steps: int = _PULLBACK_CAP):
    """``kappa(z)`` anywhere in the disc by pulling ``z`` back along its orbit.

    Points are pushed forward by ``phi`` until they are within
    ``kd.eval_radius`` of ``alpha`` (plus ``extra_steps`` more), the series is
    evaluated there and divided by ``lambda_1^j``.
    """
    z = np.asarray(z, dtype=np.complex128)
    w = z.reshape(-1).copy()
    steps = np.zeros(w.shape, dtype=int)
    todo = np.abs(w - kd.alpha) >= kd.eval_radius
    count = 0
    while np.any(todo):
        if count >= max_steps:
            raise NonConvergence("orbit did not reach the evaluation radius")
        w[todo] = symbol(w[todo])
        steps[todo] += 1
        todo[todo] = np.abs(w[todo] - kd.alpha) >= kd.eval_radius
        count += 1
    for _ in range(extra_steps):
        w = symbol(w)
        steps += 1
    out = kd.kappa(w) / kd.lambda1 ** steps
    return complex(out[0]) if z.ndim == 0 else out.reshape(z.shape)


def kappa_zero_check(kd: KoenigsData, symbol: RationalMap, z) -> complex:
    """Value of ``kappa`` at ``z`` (e.g. to confirm a zero off the fixed point)."""
    return continue_kappa(kd, symbol, complex(z))


def default_grid(kd: KoenigsData, count: int = 50) -> np.ndarray:
    """Golden-angle spiral of points within the evaluation radius of alpha."""
    return kd.alpha + kd.eval_radius * spiral(count)


def spiral(count: int, radius: float = 1.0) -> np.ndarray:
    k = np.arange(count)
    r = radius * np.sqrt((k + 0.5) / count)
    return r * np.exp(1j * k * np.pi * (3 - np.sqrt(5)))


def verify_eigen_relation(kd: KoenigsData, symbol: RationalMap, n: int, grid=None) -> float:
    """``max |kappa^n(phi(z)) - lambda_1^n kappa^n(z)|`` over the grid."""
    if n > kd.max_power:
        raise ValueError(f"power {n} not built (max {kd.max_power})")
    grid = default_grid(kd) if grid is None else np.asarray(grid, dtype=np.complex128)
    kn = kd.kappa_powers[n]
    lhs = kn(symbol(grid))
    rhs = kd.lambda1 ** n * kn(grid)
    return float(np.max(np.abs(lhs - rhs)))
