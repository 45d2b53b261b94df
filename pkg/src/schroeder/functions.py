"""Holomorphic functions on the disc as used by the solvers.

Anything the solver consumes as a right-hand side must be callable on arrays
of points and provide ``taylor_at(center, order)``.  Three concrete
representations are provided: rational functions (exact global evaluation),
truncated series (valid near their center only) and sampled functions built
from a pointwise evaluator.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import DomainError, PoleInDisc
from .series import TruncatedPowerSeries, reciprocal

# poles of a right-hand side closer than this to the open disc are rejected;
# loose because clustered (multiple) roots come back from polyroots with
# errors of order eps**(1/multiplicity)
_OPEN_DISC_POLE_SLACK = 1e-4


def trim(coeffs, rel=1e-14) -> np.ndarray:
    """Drop negligible highest-degree coefficients (keeps at least one)."""
    c = np.array(coeffs, dtype=np.complex128).reshape(-1)
    if c.size == 0:
        return np.zeros(1, dtype=np.complex128)
    scale = np.max(np.abs(c))
    if scale == 0:
        return c[:1].copy()
    k = c.size
    while k > 1 and abs(c[k - 1]) <= rel * scale:
        k -= 1
    return c[:k].copy()


def taylor_shift(coeffs, c) -> np.ndarray:
    """Coefficients of ``p(c + w)`` in powers of ``w`` (ascending order)."""
    b = np.array(coeffs, dtype=np.complex128).copy()
    d = b.size - 1
    for i in range(d):
        for j in range(d - 1, i - 1, -1):
            b[j] += c * b[j + 1]
    return b


def _fit(coeffs, order) -> np.ndarray:
    out = np.zeros(order + 1, dtype=np.complex128)
    n = min(order + 1, len(coeffs))
    out[:n] = coeffs[:n]
    return out


class RationalFunction:
    """``num(z) / den(z)`` with coefficients in ascending degree order."""

    def __init__(self, num, den=(1.0,)):
        self.num = trim(num)
        self.den = trim(den)
        if not np.any(self.den):
            raise DomainError("denominator is identically zero")
        self._check_poles()

    def _check_poles(self):
        for r in self.poles():
            if abs(r) < 1 - _OPEN_DISC_POLE_SLACK:
                raise PoleInDisc(f"pole at {r} lies inside the unit disc")

    def poles(self) -> np.ndarray:
        if self.den.size < 2:
            return np.zeros(0, dtype=np.complex128)
        return P.polyroots(self.den)

    @property
    def degree(self) -> int:
        return max(self.num.size, self.den.size) - 1

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        out = P.polyval(z, self.num) / P.polyval(z, self.den)
        return complex(out) if out.ndim == 0 else out

    def derivative(self, z):
        z = np.asarray(z, dtype=np.complex128)
        n, d = P.polyval(z, self.num), P.polyval(z, self.den)
        dn = P.polyval(z, P.polyder(self.num)) if self.num.size > 1 else 0
        dd = P.polyval(z, P.polyder(self.den)) if self.den.size > 1 else 0
        out = (dn * d - n * dd) / (d * d)
        return complex(out) if np.ndim(out) == 0 else out

    def taylor_at(self, center, order) -> TruncatedPowerSeries:
        num = _fit(taylor_shift(self.num, center), order)
        den = _fit(taylor_shift(self.den, center), order)
        n = TruncatedPowerSeries(num, center)
        d = TruncatedPowerSeries(den, center)
        return n * reciprocal(d)

    def __repr__(self):
        return f"{type(self).__name__}(num={self.num.tolist()}, den={self.den.tolist()})"


class SeriesFunction:
    """A truncated series used as a function.

    Pointwise values are the truncated polynomial; they are only meaningful
    well inside the disc of convergence around ``series.center``.
    """

    def __init__(self, series: TruncatedPowerSeries):
        self.series = series

    def __call__(self, z):
        return self.series(z)

    def taylor_at(self, center, order) -> TruncatedPowerSeries:
        s = self.series
        if complex(center) == s.center:
            return TruncatedPowerSeries(_fit(s.coeffs, order), s.center)
        # the truncated polynomial re-expanded exactly
        shifted = taylor_shift(s.coeffs, complex(center) - s.center)
        return TruncatedPowerSeries(_fit(shifted, order), center)


def cauchy_coefficients(func, center, radius, order, nodes=None) -> TruncatedPowerSeries:
    """Taylor coefficients of ``func`` about ``center`` by FFT on a circle."""
    m = nodes or max(256, 4 * (order + 1))
    theta = 2 * np.pi * np.arange(m) / m
    vals = np.asarray(func(center + radius * np.exp(1j * theta)), dtype=np.complex128)
    c = np.fft.fft(vals) / m
    k = np.arange(order + 1)
    return TruncatedPowerSeries(c[: order + 1] / radius ** k, center)


class SampledFunction:
    """A pointwise evaluator, optionally paired with its Taylor series.

    When no series is available (or a different center is requested) the
    coefficients are recovered by Cauchy's formula on a circle of radius
    ``cauchy_radius`` about the requested center.
    """

    def __init__(self, evaluate, series: TruncatedPowerSeries | None = None,
                 cauchy_radius: float = 0.25):
        self._evaluate = evaluate
        self.series = series
        self.cauchy_radius = cauchy_radius

    def __call__(self, z):
        return self._evaluate(z)

    def taylor_at(self, center, order) -> TruncatedPowerSeries:
        s = self.series
        if s is not None and complex(center) == s.center and s.order >= order:
            return TruncatedPowerSeries(s.coeffs[: order + 1], s.center)
        return cauchy_coefficients(self._evaluate, complex(center), self.cauchy_radius, order)
