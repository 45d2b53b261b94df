"""Named tolerances and session parameters.

All numerical thresholds used across the package live in :class:`Tolerances`
so the command line can override any of them by name (``--tol name=value``).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # series arithmetic
    compose_center_tol: float = 1e-10
    reciprocal_tol: float = 1e-12
    # rational symbols
    pole_margin: float = 1e-8
    self_map_tol: float = 1e-9
    common_root_tol: float = 1e-9
    moebius_tol: float = 1e-10
    zero_multiplier_tol: float = 1e-10
    unit_multiplier_tol: float = 1e-10
    boundary_margin: float = 1e-6
    fixed_point_tol: float = 1e-12
    conjugation_tol: float = 1e-10
    compactness_margin: float = 1e-6
    # Koenigs data / projections
    small_divisor_tol: float = 1e-12
    # solver
    eigen_sep_tol: float = 1e-9
    q_margin: float = 0.05
    # the tail is split off at the first n with |lambda_1|^(n+1) <= split_ratio*|lambda|
    split_ratio: float = 0.5
    solver_residual_tol: float = 1e-8
    compat_tol: float = 1e-9
    # weighted Hardy diagnostics
    growth_margin: float = 0.1
    # verification suites
    normalization_tol: float = 1e-12
    identity_tol: float = 1e-10
    check_tol: float = 1e-9
    contour_tol: float = 1e-6

    def replace(self, **changes) -> "Tolerances":
        return dataclasses.replace(self, **changes)

    @classmethod
    def names(cls) -> list[str]:
        return [f.name for f in dataclasses.fields(cls)]


DEFAULT_TOLERANCES = Tolerances()

DEFAULT_ORDER = 64
DEFAULT_MAX_N = 12
# fraction of dist(alpha, boundary) inside which truncated series are trusted
EVAL_RADIUS_FACTOR = 0.5
