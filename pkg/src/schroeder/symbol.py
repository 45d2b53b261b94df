"""Rational self-maps of the unit disc and their classification.

A symbol is a rational map with no poles on the closed disc that maps the
disc into itself.  This module finds the interior fixed point, its
multiplier, sorts the map into automorphism / Schroeder / superattracting,
conjugates the fixed point to the origin and probes compactness of the
composition operator via ``sup |phi|``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.optimize import minimize_scalar

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    DomainError,
    NearUnitMultiplier,
    NoInteriorFixedPoint,
    NonConvergence,
    NotAFixedPoint,
    NotSelfMap,
    PoleInDisc,
)
from .functions import RationalFunction, trim
from .series import TruncatedPowerSeries

_BOUNDARY_SAMPLES = 4096
_PICARD_CAP = 100_000


def _cancel_common_roots(num, den, tol):
    """Remove root pairs shared by numerator and denominator."""
    if num.size < 2 or den.size < 2:
        return num, den
    rn = list(P.polyroots(num))
    rd = list(P.polyroots(den))
    kept_d = []
    cancelled = False
    for r in rd:
        j = next((i for i, s in enumerate(rn) if abs(s - r) <= tol), None)
        if j is None:
            kept_d.append(r)
        else:
            rn.pop(j)
            cancelled = True
    if not cancelled:
        return num, den
    new_num = num[-1] * P.polyfromroots(rn) if rn else num[-1:].copy()
    new_den = den[-1] * P.polyfromroots(kept_d) if kept_d else den[-1:].copy()
    return trim(new_num), trim(new_den)


class RationalMap(RationalFunction):
    """A rational holomorphic self-map of the disc.

    Construction normalizes away common numerator/denominator roots (within
    ``tol.common_root_tol``), rejects denominators with a root in
    ``|z| <= 1 + tol.pole_margin`` and rejects maps whose boundary maximum
    modulus exceeds ``1 + tol.self_map_tol``.
    """

    def __init__(self, num, den=(1.0,), tol: Tolerances = DEFAULT_TOLERANCES):
        num, den = trim(num), trim(den)
        if not np.any(den):
            raise DomainError("denominator is identically zero")
        num, den = _cancel_common_roots(num, den, tol.common_root_tol)
        # normalize so the denominator's constant term is 1 where possible
        if den[0] != 0:
            num, den = num / den[0], den / den[0]
        self.num, self.den = num, den
        for r in self.poles():
            if abs(r) <= 1 + tol.pole_margin:
                raise PoleInDisc(f"denominator root {r} lies in the closed unit disc")
        theta = 2 * np.pi * np.arange(_BOUNDARY_SAMPLES) / _BOUNDARY_SAMPLES
        sup = float(np.max(np.abs(self(np.exp(1j * theta)))))
        if sup > 1 + tol.self_map_tol:
            raise NotSelfMap(f"max |phi| on the unit circle is {sup:.12g} > 1")

    def is_identity(self) -> bool:
        return (self.den.size == 1 and self.num.size == 2
                and abs(self.num[0]) == 0 and self.num[1] == self.den[0])

    def to_json(self) -> dict:
        return {"num": [[a.real, a.imag] for a in self.num],
                "den": [[a.real, a.imag] for a in self.den]}


@dataclass(frozen=True)
class MoebiusTransform:
    """``z -> phase * (z - a) / (1 - conj(a) z)`` with ``|a| < 1``, ``|phase| = 1``."""

    a: complex
    phase: complex = 1.0

    def __post_init__(self):
        if not abs(self.a) < 1:
            raise DomainError(f"|a| = {abs(self.a)} must be < 1")
        if abs(abs(self.phase) - 1) > 1e-12:
            raise DomainError("phase must be unimodular")

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        out = self.phase * (z - self.a) / (1 - np.conj(self.a) * z)
        return complex(out) if out.ndim == 0 else out

    def as_rational(self) -> RationalMap:
        a, p = complex(self.a), complex(self.phase)
        return RationalMap([-p * a, p], [1.0, -a.conjugate()])

    def taylor_at(self, center, order) -> TruncatedPowerSeries:
        return RationalFunction([-self.phase * self.a, self.phase],
                                [1.0, -np.conj(self.a)]).taylor_at(center, order)


def involution(alpha) -> MoebiusTransform:
    """``psi_alpha(z) = (alpha - z) / (1 - conj(alpha) z)``; swaps 0 and alpha."""
    return MoebiusTransform(complex(alpha), -1.0)


class SymbolKind(str, enum.Enum):
    AUTOMORPHISM = "Automorphism"
    SCHROEDER = "Schroeder"
    SUPERATTRACTING = "Superattracting"
    NO_INTERIOR_FIXED_POINT = "NoInteriorFixedPoint"


@dataclass(frozen=True)
class SymbolClassification:
    kind: SymbolKind
    alpha: complex | None = None
    multiplier: complex | None = None
    moebius: MoebiusTransform | None = None

    def __post_init__(self):
        if self.kind is SymbolKind.SCHROEDER:
            assert self.alpha is not None and 0 < abs(self.multiplier) < 1
        if self.kind is SymbolKind.SUPERATTRACTING:
            assert self.alpha is not None

    def to_json(self) -> dict:
        def pair(z):
            return None if z is None else [z.real, z.imag]
        out = {"kind": self.kind.value, "alpha": pair(self.alpha),
               "multiplier": pair(self.multiplier)}
        if self.moebius is not None:
            out["moebius"] = {"a": pair(self.moebius.a), "phase": pair(complex(self.moebius.phase))}
        return out


def eval_map(m: RationalMap, z):
    return m(z)


def taylor_at(m: RationalFunction, center, order) -> TruncatedPowerSeries:
    return m.taylor_at(complex(center), order)


def _polynomial_fixed_points(m: RationalMap) -> np.ndarray:
    # roots of num(z) - z den(z)
    poly = P.polysub(m.num, P.polymulx(m.den))
    poly = trim(poly)
    if poly.size < 2:
        return np.zeros(0, dtype=np.complex128)
    return P.polyroots(poly)


def find_interior_fixed_point(m: RationalMap, tol: Tolerances = DEFAULT_TOLERANCES) -> complex:
    """Interior fixed point by Picard iteration from 0, polished by Newton.

    Picard iteration converges to the Denjoy-Wolff point; it is accepted only
    if it stays at distance ``tol.boundary_margin`` from the circle.
    """
    if m.is_identity():
        raise DomainError("the identity map fixes every point")
    limit = 1 - tol.boundary_margin
    z = 0j
    for _ in range(_PICARD_CAP):
        z_new = m(z)
        if abs(z_new) >= limit:
            raise NoInteriorFixedPoint(f"orbit of 0 reaches |z| = {abs(z_new):.9g}")
        step = abs(z_new - z)
        z = z_new
        if step < 1e-10:
            break
    else:
        inside = [r for r in _polynomial_fixed_points(m) if abs(r) < limit]
        if not inside:
            raise NoInteriorFixedPoint("Picard iteration did not settle and no root lies inside")
        raise NonConvergence("Picard iteration hit its iteration cap")
    for _ in range(60):
        F = m(z) - z
        dF = m.derivative(z) - 1
        if dF == 0:
            break
        dz = F / dF
        z -= dz
        if abs(dz) <= 1e-17:
            break
    if abs(z) >= limit:
        raise NoInteriorFixedPoint(f"fixed point candidate {z} is not interior")
    if abs(m(z) - z) > tol.fixed_point_tol:
        raise NonConvergence(f"fixed point residual {abs(m(z) - z):.3g}")
    return complex(z)


def _moebius_normal_form(m: RationalMap, tol: float) -> MoebiusTransform | None:
    if m.num.size > 2 or m.den.size > 2 or m.degree != 1:
        return None
    num = np.pad(m.num, (0, 2 - m.num.size))
    den = np.pad(m.den, (0, 2 - m.den.size))
    if den[0] == 0:
        return None
    p, q = num[1] / den[0], num[0] / den[0]
    r = den[1] / den[0]
    a = -np.conj(r)
    if abs(a) >= 1 or abs(abs(p) - 1) > tol or abs(q + p * a) > tol:
        return None
    return MoebiusTransform(complex(a), complex(p / abs(p)))


def classify(m: RationalMap, tol: Tolerances = DEFAULT_TOLERANCES) -> SymbolClassification:
    """Automorphism, Schroeder, superattracting or no interior fixed point."""
    moebius = _moebius_normal_form(m, tol.moebius_tol)
    if moebius is not None:
        return SymbolClassification(SymbolKind.AUTOMORPHISM, moebius=moebius)
    try:
        alpha = find_interior_fixed_point(m, tol)
    except NoInteriorFixedPoint:
        return SymbolClassification(SymbolKind.NO_INTERIOR_FIXED_POINT)
    lam = complex(m.derivative(alpha))
    if abs(lam) <= tol.zero_multiplier_tol:
        return SymbolClassification(SymbolKind.SUPERATTRACTING, alpha, lam)
    if abs(abs(lam) - 1) <= tol.unit_multiplier_tol:
        raise NearUnitMultiplier(f"|multiplier| = {abs(lam):.15g} is numerically 1")
    if not abs(lam) < 1:
        # Schwarz lemma: impossible for a genuine self-map
        raise AssertionError(f"multiplier {lam} outside the unit disc")
    return SymbolClassification(SymbolKind.SCHROEDER, alpha, lam)


def iterate(m: RationalMap, k: int, z):
    w = np.asarray(z, dtype=np.complex128)
    for _ in range(k):
        w = m(w)
    return complex(w) if np.ndim(w) == 0 else w


def _compose_with_involution(num, den, alpha):
    """Numerator/denominator of ``(num/den) o psi_alpha`` cleared of denominators."""
    d = max(num.size, den.size) - 1
    lin = np.array([alpha, -1.0], dtype=np.complex128)          # alpha - z
    cden = np.array([1.0, -np.conj(alpha)], dtype=np.complex128)  # 1 - conj(alpha) z

    def clear(c):
        out = np.zeros(d + 1, dtype=np.complex128)
        for k, ck in enumerate(c):
            if ck == 0:
                continue
            term = ck * P.polymul(P.polypow(lin, k), P.polypow(cden, d - k))
            out[: term.size] += term
        return out

    return clear(num), clear(den)


def conjugate_by_involution(m: RationalMap, c, tol: Tolerances = DEFAULT_TOLERANCES) -> RationalMap:
    """``psi_c o phi o psi_c`` as a rational map (``psi_c`` is its own inverse)."""
    c = complex(c)
    if c == 0:
        return m
    n1, d1 = _compose_with_involution(m.num, m.den, c)
    # psi_c(w) with w = n1/d1
    return RationalMap(c * d1 - n1, d1 - np.conj(c) * n1, tol)


def conjugate_to_origin(m: RationalMap, alpha, tol: Tolerances = DEFAULT_TOLERANCES) -> RationalMap:
    """``psi_alpha o phi o psi_alpha``, a map fixing 0 with the same multiplier."""
    alpha = complex(alpha)
    if abs(m(alpha) - alpha) > tol.conjugation_tol:
        raise NotAFixedPoint(f"phi({alpha}) = {m(alpha)} != {alpha}")
    if alpha == 0:
        return m
    n1, d1 = _compose_with_involution(m.num, m.den, alpha)
    num = alpha * d1 - n1
    den = d1 - np.conj(alpha) * n1
    num[0] = 0.0  # the conjugated map fixes 0 exactly
    return RationalMap(num, den, tol)


@dataclass(frozen=True)
class CompactnessResult:
    sup_estimate: float
    compact: bool
    per_radius: dict

    def to_json(self) -> dict:
        return {"sup_estimate": self.sup_estimate, "compact": self.compact,
                "per_radius": {str(k): v for k, v in self.per_radius.items()}}


DEFAULT_RADII = (0.9, 0.99, 0.999, 0.9999)


def _boundary_sup(m: RationalMap, samples: int) -> float:
    theta = 2 * np.pi * np.arange(samples) / samples
    vals = np.abs(m(np.exp(1j * theta)))
    best = float(np.max(vals))
    h = 2 * np.pi / samples
    for i in np.argsort(vals)[-5:]:
        res = minimize_scalar(lambda t: -abs(m(np.exp(1j * t))),
                              bounds=(theta[i] - h, theta[i] + h), method="bounded",
                              options={"xatol": 1e-13})
        best = max(best, -float(res.fun))
    return best


def compactness_probe(m: RationalMap, radii=DEFAULT_RADII, samples_per_circle: int = 720,
                      tol: Tolerances = DEFAULT_TOLERANCES) -> CompactnessResult:
    """Estimate ``sup_D |phi|``; ``C_phi`` is compact iff it is below 1.

    Besides the requested circles the unit circle itself is sampled and the
    largest samples are refined by bounded 1-D maximization: a rational map
    without poles on the closed disc attains its supremum there.
    """
    radii = tuple(float(r) for r in radii)
    if any(not 0 < r < 1 for r in radii) or any(b <= a for a, b in zip(radii, radii[1:])):
        raise DomainError("radii must be strictly increasing in (0, 1)")
    theta = 2 * np.pi * np.arange(samples_per_circle) / samples_per_circle
    per_radius = {r: float(np.max(np.abs(m(r * np.exp(1j * theta))))) for r in radii}
    per_radius[1.0] = _boundary_sup(m, samples_per_circle)
    sup = max(per_radius.values())
    return CompactnessResult(sup, sup < 1 - tol.compactness_margin, per_radius)
