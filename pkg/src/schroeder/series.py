"""Truncated complex power series about a point of the unit disc.

A :class:`TruncatedPowerSeries` holds the Taylor coefficients ``a_0 .. a_N`` of
``sum_k a_k (z - c)^k``.  Values are immutable; every operation returns a new
series.  Series only combine when their centers agree bitwise and their orders
match, so a pipeline fixes one truncation order up front.

Truncation error is never tracked: coefficients near index ``N`` of a product
or composition are exact for the truncated inputs, which is all that is
promised.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.signal import fftconvolve

from .config import DEFAULT_TOLERANCES
from .errors import (
    CenterMismatch,
    NonFinite,
    OrderExceeded,
    OrderMismatch,
    ZeroConstantTerm,
)

# above this order products switch from direct to FFT convolution
_FFT_THRESHOLD = 512


class TruncatedPowerSeries:
    __slots__ = ("_coeffs", "_center")

    def __init__(self, coeffs, center=0.0):
        c = np.array(coeffs, dtype=np.complex128).reshape(-1)
        if c.size == 0:
            raise ValueError("a series needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise NonFinite("series coefficients must be finite")
        center = complex(center)
        if not (math.isfinite(center.real) and math.isfinite(center.imag)):
            raise NonFinite("series center must be finite")
        c.setflags(write=False)
        self._coeffs = c
        self._center = center

    # constructors ------------------------------------------------------
    @classmethod
    def zeros(cls, order, center=0.0):
        return cls(np.zeros(order + 1, dtype=np.complex128), center)

    @classmethod
    def constant(cls, value, order, center=0.0):
        c = np.zeros(order + 1, dtype=np.complex128)
        c[0] = value
        return cls(c, center)

    @classmethod
    def monomial(cls, k, order, center=0.0, coeff=1.0):
        """The series ``coeff * (z - center)^k`` (zero if ``k > order``)."""
        c = np.zeros(order + 1, dtype=np.complex128)
        if k <= order:
            c[k] = coeff
        return cls(c, center)

    @classmethod
    def identity(cls, order, center=0.0):
        """The function ``z`` expanded about ``center``."""
        c = np.zeros(order + 1, dtype=np.complex128)
        c[0] = center
        if order >= 1:
            c[1] = 1.0
        return cls(c, center)

    # accessors ---------------------------------------------------------
    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def center(self) -> complex:
        return self._center

    @property
    def order(self) -> int:
        return self._coeffs.size - 1

    def __len__(self):
        return self._coeffs.size

    def __repr__(self):
        head = ", ".join(f"{a:.6g}" for a in self._coeffs[:6])
        more = ", ..." if self.order >= 6 else ""
        return f"TruncatedPowerSeries([{head}{more}], center={self._center!r}, order={self.order})"

    def with_coeffs(self, coeffs):
        """A series with the same center and new coefficients."""
        return TruncatedPowerSeries(coeffs, self._center)

    # arithmetic --------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, TruncatedPowerSeries):
            return add(self, other)
        c = self._coeffs.copy()
        c[0] += other
        return self.with_coeffs(c)

    __radd__ = __add__

    def __neg__(self):
        return self.with_coeffs(-self._coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedPowerSeries):
            return mul(self, other)
        return self.with_coeffs(self._coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self.with_coeffs(self._coeffs / scalar)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers: use reciprocal()")
        result = TruncatedPowerSeries.constant(1.0, self.order, self._center)
        base = self
        while k:
            if k & 1:
                result = mul(result, base)
            k >>= 1
            if k:
                base = mul(base, base)
        return result

    def __call__(self, z):
        return evaluate(self, z)


def _check_compatible(a: TruncatedPowerSeries, b: TruncatedPowerSeries):
    if a.center != b.center:
        raise CenterMismatch(f"centers differ: {a.center} vs {b.center}")
    if a.order != b.order:
        raise OrderMismatch(f"orders differ: {a.order} vs {b.order}")


def _truncated_product(x: np.ndarray, y: np.ndarray, n: int) -> np.ndarray:
    if n >= _FFT_THRESHOLD:
        return fftconvolve(x, y)[:n]
    return np.convolve(x, y)[:n]


def add(a: TruncatedPowerSeries, b: TruncatedPowerSeries) -> TruncatedPowerSeries:
    _check_compatible(a, b)
    return a.with_coeffs(a.coeffs + b.coeffs)


def mul(a: TruncatedPowerSeries, b: TruncatedPowerSeries) -> TruncatedPowerSeries:
    """Cauchy product truncated at the common order."""
    _check_compatible(a, b)
    return a.with_coeffs(_truncated_product(a.coeffs, b.coeffs, a.order + 1))


def compose(outer: TruncatedPowerSeries, inner: TruncatedPowerSeries,
            center_tol: float = DEFAULT_TOLERANCES.compose_center_tol) -> TruncatedPowerSeries:
    """Taylor coefficients of ``outer(inner(z))`` about ``inner.center``.

    ``inner(inner.center)`` (its constant term) must equal ``outer.center`` to
    within ``center_tol``; the result is obtained by Horner's scheme in the
    series ring applied to ``inner - outer.center``.
    """
    if outer.order != inner.order:
        raise OrderMismatch(f"orders differ: {outer.order} vs {inner.order}")
    h = inner.coeffs.copy()
    h[0] -= outer.center
    if abs(h[0]) > center_tol:
        raise CenterMismatch(
            f"inner constant term {inner.coeffs[0]} does not match outer center {outer.center}")
    n = inner.order + 1
    a = outer.coeffs
    acc = np.zeros(n, dtype=np.complex128)
    acc[0] = a[-1]
    for k in range(outer.order - 1, -1, -1):
        acc = _truncated_product(acc, h, n)
        acc[0] += a[k]
    return TruncatedPowerSeries(acc, inner.center)


def derivative_at_center(s: TruncatedPowerSeries, k: int) -> complex:
    """``s^{(k)}(center) = k! a_k``."""
    if k < 0 or k > s.order:
        raise OrderExceeded(f"derivative order {k} exceeds series order {s.order}")
    return complex(math.factorial(k) * s.coeffs[k])


def evaluate(s: TruncatedPowerSeries, z):
    """Horner evaluation of the truncated polynomial; ``z`` may be an array."""
    w = np.asarray(z, dtype=np.complex128) - s.center
    a = s.coeffs
    acc = np.full(w.shape, a[-1], dtype=np.complex128)
    for k in range(s.order - 1, -1, -1):
        acc = acc * w + a[k]
    if acc.ndim == 0:
        return complex(acc)
    return acc


def reciprocal(s: TruncatedPowerSeries,
               tol: float = DEFAULT_TOLERANCES.reciprocal_tol) -> TruncatedPowerSeries:
    """Series ``t`` with ``s * t = 1`` through order ``N``."""
    a = s.coeffs
    if abs(a[0]) <= tol:
        raise ZeroConstantTerm(f"constant term {a[0]} too small to invert")
    n = s.order + 1
    t = np.zeros(n, dtype=np.complex128)
    t[0] = 1.0 / a[0]
    for k in range(1, n):
        t[k] = -np.dot(a[1:k + 1], t[k - 1::-1]) * t[0]
    return s.with_coeffs(t)


def vanishes_to_order(s: TruncatedPowerSeries, n: int, tol: float) -> bool:
    """True iff ``|a_k| <= tol`` for every ``k <= n`` (membership in Hol_n)."""
    if n < 0 or n > s.order:
        raise OrderExceeded(f"order {n} exceeds series order {s.order}")
    return bool(np.all(np.abs(s.coeffs[:n + 1]) <= tol))
