"""JSON input parsing and the schemas of the emitted reports.

Complex numbers travel as ``[re, im]`` pairs.  Symbols are rational maps
``{"num": [...], "den": [...]}`` (ascending degree); right-hand sides may in
addition be truncated series ``{"series": {"center": [re, im], "coeffs": [...]}}``.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import ParseError
from .functions import RationalFunction, SeriesFunction
from .series import TruncatedPowerSeries
from .symbol import RationalMap


def parse_complex(value) -> complex:
    if isinstance(value, bool):
        raise ParseError(f"not a complex number: {value!r}")
    if isinstance(value, (int, float)):
        return complex(value)
    if (isinstance(value, (list, tuple)) and len(value) == 2
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)):
        return complex(value[0], value[1])
    raise ParseError(f"expected a number or an [re, im] pair, got {value!r}")


def parse_coeffs(values) -> list[complex]:
    if not isinstance(values, list) or not values:
        raise ParseError("coefficient list must be a non-empty array")
    return [parse_complex(v) for v in values]


def _load(obj):
    if isinstance(obj, (str, bytes)):
        try:
            return json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    return obj


def parse_symbol(obj, tol: Tolerances = DEFAULT_TOLERANCES) -> RationalMap:
    """A rational self-map of the disc from its JSON description."""
    data = _load(obj)
    if not isinstance(data, dict) or "num" not in data:
        raise ParseError('symbol must be an object {"num": [...], "den": [...]}')
    extra = set(data) - {"num", "den"}
    if extra:
        raise ParseError(f"unknown symbol fields: {sorted(extra)}")
    num = parse_coeffs(data["num"])
    den = parse_coeffs(data.get("den", [1.0]))
    return RationalMap(num, den, tol)


def parse_function(obj):
    """A right-hand side: rational function or truncated series."""
    data = _load(obj)
    if not isinstance(data, dict):
        raise ParseError("function must be a JSON object")
    if "series" in data:
        s = data["series"]
        if not isinstance(s, dict) or "coeffs" not in s:
            raise ParseError('series must be {"center": [re, im], "coeffs": [...]}')
        center = parse_complex(s.get("center", 0.0))
        if not abs(center) < 1:
            raise ParseError("series center must lie in the unit disc")
        return SeriesFunction(TruncatedPowerSeries(parse_coeffs(s["coeffs"]), center))
    if "num" in data:
        return RationalFunction(parse_coeffs(data["num"]), parse_coeffs(data.get("den", [1.0])))
    raise ParseError('function must have "num"/"den" or "series"')


def to_jsonable(obj):
    """Recursively convert numpy and complex values to plain JSON types."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_float(obj.real), _float(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        return _float(obj)
    if isinstance(obj, TruncatedPowerSeries):
        return {"center": to_jsonable(obj.center), "coeffs": to_jsonable(obj.coeffs)}
    return obj


def _float(x):
    x = float(x)
    return x if math.isfinite(x) else None


# ------------------------------------------------------------------ schemas

_COMPLEX = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_NULLABLE_COMPLEX = {"oneOf": [_COMPLEX, {"type": "null"}]}

CLASSIFICATION_SCHEMA = {
    "type": "object",
    "required": ["kind", "alpha", "multiplier"],
    "properties": {
        "kind": {"enum": ["Automorphism", "Schroeder", "Superattracting", "NoInteriorFixedPoint"]},
        "alpha": _NULLABLE_COMPLEX,
        "multiplier": _NULLABLE_COMPLEX,
        "moebius": {"type": "object"},
    },
}

SPECTRUM_SCHEMA = {
    "type": "object",
    "required": ["classification", "spectrum", "compact", "contour_checks"],
    "properties": {
        "classification": CLASSIFICATION_SCHEMA,
        "spectrum": {"type": "array", "items": {
            "type": "object", "required": ["value", "kind"],
            "properties": {"value": _COMPLEX, "kind": {"enum": ["Eigenvalue", "EssentialPoint"]}}}},
        "compact": {"type": "boolean"},
        "max_n": {"type": "integer"},
        "compactness": {"type": "object"},
        "contour_checks": {"type": "array", "items": {
            "type": "object", "required": ["n", "error", "pass"],
            "properties": {"n": {"type": "integer"}, "error": {"type": "number"},
                           "pass": {"type": "boolean"}}}},
    },
}

ERROR_SCHEMA = {
    "type": "object",
    "required": ["error", "message", "exit_code"],
    "properties": {"error": {"type": "string"}, "message": {"type": "string"},
                   "exit_code": {"enum": [1, 2, 3]}},
}

_SERIES = {"type": "object", "required": ["center", "coeffs"],
           "properties": {"center": _COMPLEX, "coeffs": {"type": "array", "items": _COMPLEX}}}

REPORT_SCHEMAS = {
    "analyze": {"type": "object", "required": ["command", "symbol", "classification"],
                "properties": {"classification": CLASSIFICATION_SCHEMA}},
    "koenigs": {"type": "object", "required": ["alpha", "lambda1", "kappa", "eigen_residual"],
                "properties": {"alpha": _COMPLEX, "lambda1": _COMPLEX, "kappa": _SERIES,
                               "eigen_residual": {"type": "number"}}},
    "project": {"type": "object", "required": ["n", "functionals", "psi", "projection"],
                "properties": {"psi": _COMPLEX, "projection": _SERIES,
                               "functionals": {"type": "array",
                                               "items": {"type": "array", "items": _COMPLEX}}}},
    "solve": {"type": "object", "required": ["lambda", "mode", "grid", "diagnostics"],
              "properties": {"lambda": _COMPLEX,
                             "f_series": {"oneOf": [_SERIES, {"type": "null"}]},
                             "grid": {"type": "array", "items": {
                                 "type": "object", "required": ["z", "f"],
                                 "properties": {"z": _COMPLEX, "f": _COMPLEX}}},
                             "diagnostics": {"type": "object",
                                             "required": ["n_used", "epsilon", "q",
                                                          "terms_summed", "residual"]}}},
    "spectrum": SPECTRUM_SCHEMA,
    "verify": {"type": "object", "required": ["checks", "all_pass"],
               "properties": {"all_pass": {"type": "boolean"}, "checks": {"type": "array", "items": {
                   "type": "object", "required": ["suite", "name", "value", "tolerance", "pass"]}}}},
    "hardy": {"type": "object", "required": ["partial_norms", "growth_exponent", "member"],
              "properties": {"partial_norms": {"type": "array", "items": {"type": "number"}},
                             "member": {"type": "boolean"}}},
    "compactness": {"type": "object", "required": ["sup_estimate", "compact", "per_radius"],
                    "properties": {"compact": {"type": "boolean"}}},
    "error": ERROR_SCHEMA,
}
