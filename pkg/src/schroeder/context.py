"""Per-symbol cache of everything the solvers and reports reuse."""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .config import DEFAULT_MAX_N, DEFAULT_ORDER, DEFAULT_TOLERANCES, EVAL_RADIUS_FACTOR, Tolerances
from .errors import NotSchroeder
from .koenigs import KoenigsData, build_koenigs
from .projections import ProjectionFamily, build_projection_family
from .symbol import (RationalMap, SymbolClassification, SymbolKind, classify,
                     conjugate_to_origin, involution)
from .series import TruncatedPowerSeries

_Q_SAMPLES = 720


class SymbolContext:
    """A symbol together with its lazily built Koenigs data and projections.

    Everything is derived from ``symbol`` and the settings; the cached values
    are never mutated, so a context may be shared between threads once the
    members it needs have been touched.
    """

    def __init__(self, symbol: RationalMap, order: int = DEFAULT_ORDER,
                 max_n: int = DEFAULT_MAX_N, tol: Tolerances = DEFAULT_TOLERANCES):
        self.symbol = symbol
        self.order = order
        self.max_n = max_n
        self.tol = tol
        self._q_levels: list[tuple[float, float]] = []

    @cached_property
    def classification(self) -> SymbolClassification:
        return classify(self.symbol, self.tol)

    @property
    def kind(self) -> SymbolKind:
        return self.classification.kind

    @property
    def alpha(self) -> complex:
        return self.classification.alpha

    @property
    def lambda1(self) -> complex:
        return self.classification.multiplier

    @cached_property
    def eval_radius(self) -> float:
        return EVAL_RADIUS_FACTOR * (1 - abs(self.alpha))

    @cached_property
    def phi_series(self) -> TruncatedPowerSeries:
        return self.symbol.taylor_at(self.alpha, self.order)

    @cached_property
    def koenigs(self) -> KoenigsData:
        if self.kind is not SymbolKind.SCHROEDER:
            raise NotSchroeder(f"symbol is {self.kind.value}, not Schroeder")
        return build_koenigs(self.symbol, self.order, min(self.max_n + 2, self.order),
                             self.classification, self.tol)

    @cached_property
    def projections(self) -> ProjectionFamily:
        return build_projection_family(self.koenigs, self.max_n + 1)

    @cached_property
    def conjugated(self) -> RationalMap:
        """``psi_alpha o phi o psi_alpha``, fixing the origin exactly.

        When ``alpha = 0`` no conjugation is applied and the conjugated
        coordinates coincide with the original ones.
        """
        if self.alpha == 0:
            m = self.symbol
            if m.num[0] == 0:
                return m
            num = m.num.copy()
            num[0] = 0.0
            return RationalMap(num, m.den, self.tol)
        return conjugate_to_origin(self.symbol, self.alpha, self.tol)

    @cached_property
    def near_radius(self) -> float:
        """``r`` such that ``|u| < r`` implies ``|w - alpha| < eval_radius``."""
        a, R = abs(self.alpha), self.eval_radius
        return R / ((1 - a * a) + a * R)

    def offset_from_conjugated(self, u):
        """``w - alpha`` for ``w`` with conjugated coordinate ``u``, without cancellation."""
        if self.alpha == 0:
            return u
        a = self.alpha
        return -u * (1 - abs(a) ** 2) / (1 - np.conj(a) * u)

    @cached_property
    def involution(self):
        return involution(self.alpha)

    def to_conjugated(self, w):
        """Coordinates in which the fixed point sits at the origin."""
        if self.alpha == 0:
            return w
        return self.involution(w)

    def contraction_level(self, j: int) -> tuple[float, float]:
        """``(eps, q)`` for ``eps = 0.5 / 2^j`` with ``q = max_{|u|=eps} |phi~(u)|/|u|``."""
        while len(self._q_levels) <= j:
            eps = 0.5 / 2 ** len(self._q_levels)
            u = eps * np.exp(2j * np.pi * np.arange(_Q_SAMPLES) / _Q_SAMPLES)
            q = float(np.max(np.abs(self.conjugated(u)) / eps))
            self._q_levels.append((eps, q))
        return self._q_levels[j]
