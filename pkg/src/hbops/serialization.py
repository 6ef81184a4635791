"""Strict JSON codecs for series, self-maps and symbols.

Floats are written with ``repr`` (shortest round-trip), so
``load(dump(x)) == x`` bit for bit.  Unknown fields are rejected.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import SchemaError
from .power_series import PowerSeries
from .symbols import HoloSelfMap, Symbol

__all__ = [
    "SCHEMA",
    "series_to_json",
    "series_from_json",
    "map_to_json",
    "map_from_json",
    "symbol_to_json",
    "symbol_from_json",
    "complex_to_json",
    "complex_from_json",
    "function_from_json",
    "read_json",
    "dumps",
]

SCHEMA = "hbops/1"


def _check_fields(obj, allowed, where, required=()):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object", where)
    for key in obj:
        if key not in allowed:
            raise SchemaError(f"{where}: unknown field {key!r}", key)
    for key in required:
        if key not in obj:
            raise SchemaError(f"{where}: missing field {key!r}", key)


def _number(x, where) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise SchemaError(f"{where}: expected a number", where)
    if not math.isfinite(x):
        raise SchemaError(f"{where}: non-finite number", where)
    return float(x)


def complex_to_json(c) -> dict:
    c = complex(c)
    return {"re": c.real, "im": c.imag}


def complex_from_json(obj, where="value") -> complex:
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return complex(_number(obj, where))
    _check_fields(obj, ("re", "im"), where, required=("re", "im"))
    return complex(_number(obj["re"], where + ".re"), _number(obj["im"], where + ".im"))


def series_to_json(p: PowerSeries) -> dict:
    return {
        "n": p.dimension,
        "terms": [{"alpha": list(a), "re": c.real, "im": c.imag} for a, c in p.terms.items()],
    }


def series_from_json(obj, where="series") -> PowerSeries:
    _check_fields(obj, ("n", "terms"), where, required=("n", "terms"))
    n = obj["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SchemaError(f"{where}.n: expected a positive integer", "n")
    if not isinstance(obj["terms"], list):
        raise SchemaError(f"{where}.terms: expected a list", "terms")
    terms = {}
    for i, t in enumerate(obj["terms"]):
        tw = f"{where}.terms[{i}]"
        _check_fields(t, ("alpha", "re", "im"), tw, required=("alpha", "re", "im"))
        alpha = t["alpha"]
        if not isinstance(alpha, list) or len(alpha) != n or any(
                isinstance(k, bool) or not isinstance(k, int) or k < 0 for k in alpha):
            raise SchemaError(f"{tw}.alpha: expected {n} non-negative integers", "alpha")
        key = tuple(alpha)
        if key in terms:
            raise SchemaError(f"{tw}.alpha: duplicate multi-index {key}", "alpha")
        terms[key] = complex(_number(t["re"], tw + ".re"), _number(t["im"], tw + ".im"))
    return PowerSeries(n, terms)


def _result_series(obj):
    """Accept an emitted report whose ``result`` field is a series."""
    if isinstance(obj, dict) and obj.get("schema") == SCHEMA and "result" in obj:
        return obj["result"]
    return obj


def map_to_json(phi: HoloSelfMap) -> dict:
    if phi.kind == "linear":
        return {"kind": "linear",
                "matrix": [[complex_to_json(c) for c in row] for row in phi.matrix]}
    if phi.kind == "polynomial":
        return {"kind": "polynomial", "components": [series_to_json(c) for c in phi.components]}
    raise SchemaError(f"self-map of kind {phi.kind!r} has no JSON form", "kind")


def map_from_json(obj, where="phi") -> HoloSelfMap:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object", where)
    kind = obj.get("kind")
    if kind == "linear":
        _check_fields(obj, ("kind", "matrix"), where, required=("matrix",))
        rows = obj["matrix"]
        if not isinstance(rows, list) or not rows or any(not isinstance(r, list) for r in rows):
            raise SchemaError(f"{where}.matrix: expected a list of rows", "matrix")
        A = [[complex_from_json(c, f"{where}.matrix[{i}][{j}]") for j, c in enumerate(r)]
             for i, r in enumerate(rows)]
        if any(len(r) != len(A) for r in A):
            raise SchemaError(f"{where}.matrix: must be square", "matrix")
        return HoloSelfMap.linear(np.array(A, dtype=complex))
    if kind == "polynomial":
        _check_fields(obj, ("kind", "components"), where, required=("components",))
        comps = obj["components"]
        if not isinstance(comps, list) or not comps:
            raise SchemaError(f"{where}.components: expected a non-empty list", "components")
        series = [series_from_json(c, f"{where}.components[{i}]") for i, c in enumerate(comps)]
        if any(s.dimension != len(series) for s in series):
            raise SchemaError(f"{where}.components: need n components in n variables", "components")
        return HoloSelfMap.polynomial(series)
    raise SchemaError(f"{where}.kind: expected 'linear' or 'polynomial'", "kind")


def symbol_to_json(g: Symbol) -> dict:
    if g.kind == "polynomial":
        return {"kind": "polynomial", "series": series_to_json(g.series)}
    if g.kind == "log":
        return {"kind": "log", "b": [complex_to_json(c) for c in g.b], "power": g.power}
    raise SchemaError(f"symbol of kind {g.kind!r} has no JSON form", "kind")


def symbol_from_json(obj, where="g") -> Symbol:
    obj = _result_series(obj)
    if isinstance(obj, dict) and "kind" not in obj:
        return Symbol.polynomial(series_from_json(obj, where))
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object", where)
    kind = obj["kind"]
    if kind == "polynomial":
        _check_fields(obj, ("kind", "series"), where, required=("series",))
        return Symbol.polynomial(series_from_json(obj["series"], where + ".series"))
    if kind == "log":
        _check_fields(obj, ("kind", "b", "power"), where, required=("b",))
        b = obj["b"]
        if not isinstance(b, list) or not b:
            raise SchemaError(f"{where}.b: expected a list of coordinates", "b")
        power = obj.get("power", 1)
        if isinstance(power, bool) or not isinstance(power, int) or power < 1:
            raise SchemaError(f"{where}.power: expected a positive integer", "power")
        return Symbol.log_form([complex_from_json(c, f"{where}.b[{i}]") for i, c in enumerate(b)], power)
    raise SchemaError(f"{where}.kind: expected 'polynomial' or 'log'", "kind")


def function_from_json(obj, where="function") -> PowerSeries:
    obj = _result_series(obj)
    if isinstance(obj, dict) and obj.get("kind") == "polynomial":
        _check_fields(obj, ("kind", "series"), where, required=("series",))
        obj = obj["series"]
    return series_from_json(obj, where)


def read_json(path, where):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"{where}: cannot read {path}: {exc.strerror}", where) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{where}: invalid JSON ({exc.msg} at line {exc.lineno})", where) from None


def _default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, complex):
        return complex_to_json(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, default=_default, allow_nan=False, indent=1)
