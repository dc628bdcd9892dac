"""JSON schemas for fans, divisors, polytopes, and dimension functions.

Rationals are serialised as strings "p/q" (or "n" for integers); fan files
are {"dim": d, "rays": [[int, ...], ...], "cones": [[idx, ...], ...]} with
0-based indices.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .fan import Fan
from .istheory import Divisor
from .polymat import DimFunction


class SchemaError(Exception):
    pass


def _frac_to_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _frac_from(obj):
    if isinstance(obj, str):
        return Fraction(obj)
    if isinstance(obj, int):
        return Fraction(obj)
    raise SchemaError(f"expected a rational string or integer, got {obj!r}")


def fan_to_json(fan):
    return {"dim": fan.dim,
            "rays": [list(r) for r in fan.rays],
            "cones": [list(c) for c in fan.max_cones]}


def fan_from_json(obj):
    try:
        dim = int(obj["dim"])
        rays = [[int(x) for x in r] for r in obj["rays"]]
        cones = [[int(i) for i in c] for c in obj["cones"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed fan object: {exc}")
    return Fan.make(dim, rays, cones)


def divisor_to_json(divisor):
    return {"coeffs": [_frac_to_str(c) for c in divisor.coeffs]}


def divisor_from_json(obj):
    try:
        coeffs = [_frac_from(c) for c in obj["coeffs"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed divisor object: {exc}")
    return Divisor(tuple(coeffs))


def polytope_to_json(poly):
    return {"vertices": [[_frac_to_str(x) for x in v] for v in poly.vertices]}


def dim_function_to_json(b):
    return b.to_json()


def dim_function_from_json(obj):
    try:
        n = int(obj["N"])
        raw = obj["b"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed dimension function: {exc}")
    mapping = {}
    if isinstance(raw, dict):
        for key, v in raw.items():
            subset = tuple(int(ch) for ch in str(key))
            mapping[subset] = int(v)
    elif isinstance(raw, list):
        for entry in raw:
            try:
                subset, v = entry
            except (TypeError, ValueError):
                raise SchemaError(f"malformed subset entry {entry!r}")
            mapping[tuple(int(j) for j in subset)] = int(v)
    else:
        raise SchemaError("b must be a mapping or a list of [subset, value] pairs")
    try:
        return DimFunction.from_subsets(n, mapping)
    except ValueError as exc:
        raise SchemaError(str(exc))


def load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}")


def dump(obj, path=None, pretty=False):
    text = json.dumps(obj, indent=2 if pretty else None, sort_keys=False)
    if path is None:
        return text
    with open(path, "w") as fh:
        fh.write(text + "\n")
    return text
