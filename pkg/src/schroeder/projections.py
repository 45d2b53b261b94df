"""Rank-one spectral projections onto the eigenlines ``C kappa^n``.

``P_0 f = f(alpha)`` and ``P_n f = g^(n)(alpha)/n! * kappa^n`` where
``g = f - sum_{k<n} P_k f``.  Every ``P_n`` is therefore a linear functional
of the derivatives ``f(alpha), ..., f^(n)(alpha)`` times ``kappa^n``:

    P_n f = (sum_m c_{n,m} f^(m)(alpha)) kappa^n.

The table ``c_{n,m}`` is built once by running the recursion on the monomial
basis.  In Taylor coordinates (``t_{n,m} = m! c_{n,m}``, acting on the Taylor
coefficients ``a_m = f^(m)(alpha)/m!``) it reads

    t_n = e_n - sum_{k<n} [w^n] kappa^k * t_k.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES
from .errors import CenterMismatch, IndexExceeded, OrderExceeded, SmallDivisor, TooLarge
from .koenigs import KoenigsData
from .series import TruncatedPowerSeries, derivative_at_center

_MAX_PARTITION_N = 20


@dataclass(frozen=True)
class PartitionTerm:
    """Index vector ``m`` with ``sum_j j*m_j = n``; ``m[j-1]`` is ``m_j``."""
    m: tuple
    weight: int
    coefficient: complex | None = None

    @property
    def n(self) -> int:
        return sum((j + 1) * mj for j, mj in enumerate(self.m))


def _partitions(n: int, largest: int):
    """Partitions of n into parts <= largest, as multiplicity dicts."""
    if n == 0:
        yield {}
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _partitions(n - part, part):
            out = dict(rest)
            out[part] = out.get(part, 0) + 1
            yield out


def enumerate_partitions(n: int) -> list[PartitionTerm]:
    """All ``m`` in N_0^n with ``m_1 + 2 m_2 + ... + n m_n = n``."""
    if not 1 <= n <= _MAX_PARTITION_N:
        raise TooLarge(f"partition enumeration supports 1 <= n <= {_MAX_PARTITION_N}, got {n}")
    terms = []
    for mult in _partitions(n, n):
        m = tuple(mult.get(j, 0) for j in range(1, n + 1))
        terms.append(PartitionTerm(m, sum(m)))
    return terms


def partition_coefficient(m, phi_series: TruncatedPowerSeries) -> complex:
    """``n!/(m_1!...m_n!) * prod (phi^(j)(alpha)/j!)^{m_j}``."""
    n = sum((j + 1) * mj for j, mj in enumerate(m))
    if n > phi_series.order:
        raise OrderExceeded(f"need order {n}, series has {phi_series.order}")
    b = phi_series.coeffs
    out = complex(math.factorial(n))
    for j, mj in enumerate(m, start=1):
        if mj:
            out *= b[j] ** mj / math.factorial(mj)
    return out


def faa_di_bruno_derivative(g: TruncatedPowerSeries, phi_series: TruncatedPowerSeries,
                            n: int) -> complex:
    """``(g o phi)^(n)(alpha)`` from the partition sum, ``phi(alpha) = alpha``."""
    if g.center != phi_series.center:
        raise CenterMismatch("g and phi must be expanded about the same point")
    if n > g.order or n > phi_series.order:
        raise OrderExceeded(f"derivative {n} beyond series order")
    if n == 0:
        return complex(g.coeffs[0])
    total = 0j
    for term in enumerate_partitions(n):
        total += partition_coefficient(term.m, phi_series) * derivative_at_center(g, term.weight)
    return total


@dataclass(frozen=True)
class ProjectionFamily:
    koenigs: KoenigsData
    functionals: tuple      # row n: (c_{n,0}, ..., c_{n,n}), derivative coordinates
    taylor_rows: np.ndarray  # t_{n,m}, acting on Taylor coefficients, lower triangular
    max_n: int

    def psi(self, n: int, f: TruncatedPowerSeries) -> complex:
        """``<Psi_n, f>``: the coefficient of ``kappa^n`` in ``P_n f``."""
        _check_index(self, n)
        _check_input(self, f)
        return complex(self.taylor_rows[n, : n + 1] @ f.coeffs[: n + 1])

    def psi_all(self, f: TruncatedPowerSeries) -> np.ndarray:
        _check_input(self, f)
        k = self.max_n + 1
        return self.taylor_rows @ f.coeffs[:k]


def build_projection_family(kd: KoenigsData, max_n: int) -> ProjectionFamily:
    """Materialize ``c_{n,m}`` for ``0 <= m <= n <= max_n``."""
    if max_n > kd.max_power or max_n > kd.order:
        raise IndexExceeded(f"max_n={max_n} exceeds available kappa powers ({kd.max_power})")
    k = max_n + 1
    T = np.zeros((k, k), dtype=np.complex128)
    for n in range(k):
        row = np.zeros(k, dtype=np.complex128)
        row[n] = 1.0
        for j in range(n):
            row -= kd.kappa_powers[j].coeffs[n] * T[j]
        T[n] = row
    fact = np.array([math.factorial(m) for m in range(k)], dtype=float)
    rows = tuple(T[n, : n + 1] / fact[: n + 1] for n in range(k))
    T.setflags(write=False)
    return ProjectionFamily(kd, rows, T, max_n)


def _check_index(pf: ProjectionFamily, n: int):
    if not 0 <= n <= pf.max_n:
        raise IndexExceeded(f"projection index {n} outside 0..{pf.max_n}")


def _check_input(pf: ProjectionFamily, f: TruncatedPowerSeries):
    kd = pf.koenigs
    if f.center != kd.alpha:
        raise CenterMismatch(f"f is centered at {f.center}, projections at {kd.alpha}")
    if f.order < pf.max_n:
        raise OrderExceeded("f is truncated below the projection range")


def _fit_order(s: TruncatedPowerSeries, order: int) -> TruncatedPowerSeries:
    if s.order == order:
        return s
    c = np.zeros(order + 1, dtype=np.complex128)
    m = min(order, s.order) + 1
    c[:m] = s.coeffs[:m]
    return TruncatedPowerSeries(c, s.center)


def apply_projection(pf: ProjectionFamily, n: int, f: TruncatedPowerSeries) -> TruncatedPowerSeries:
    """``P_n f`` as a series about alpha, at the order of ``f``."""
    psi = pf.psi(n, f)
    return _fit_order(pf.koenigs.kappa_powers[n], f.order) * psi


def apply_Qn(pf: ProjectionFamily, n: int, f: TruncatedPowerSeries) -> TruncatedPowerSeries:
    """``Q_n f = P_0 f + ... + P_n f``."""
    _check_index(pf, n)
    _check_input(pf, f)
    a = pf.taylor_rows[: n + 1, : n + 1] @ f.coeffs[: n + 1]
    out = np.zeros(f.order + 1, dtype=np.complex128)
    for k in range(n + 1):
        out += a[k] * _fit_order(pf.koenigs.kappa_powers[k], f.order).coeffs
    return TruncatedPowerSeries(out, f.center)


def closed_form_P(n: int, lambda1: complex, d2: complex = 0.0, d3: complex = 0.0,
                  small_divisor_tol: float = DEFAULT_TOLERANCES.small_divisor_tol) -> np.ndarray:
    """Explicit ``(c_{n,0}, ..., c_{n,n})`` for ``n <= 3``.

    ``d2`` and ``d3`` are ``phi''(alpha)`` and ``phi'''(alpha)``.  Kept separate
    from the recursion so the two can be checked against each other.
    """
    if n == 0:
        return np.array([1.0], dtype=np.complex128)
    if n == 1:
        return np.array([0.0, 1.0], dtype=np.complex128)
    if n > 3:
        raise IndexExceeded("closed forms are available for n <= 3 only")
    l1, l2, l3 = lambda1, lambda1 ** 2, lambda1 ** 3

    def div(a, b):
        if abs(b) < small_divisor_tol:
            raise SmallDivisor(f"eigenvalue gap {abs(b):.3g}")
        return a / b

    if n == 2:
        return np.array([0.0, 0.5 * div(d2, l2 - l1), 0.5], dtype=np.complex128)
    c1 = div(d3, l3 - l1) + div(3 * d2 ** 2, (l1 - l2) * (l1 - l3))
    c2 = div(3 * d2, l2 - l1)
    return np.array([0.0, c1, c2, 1.0], dtype=np.complex128) / 6.0
