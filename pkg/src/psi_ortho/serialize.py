"""JSON/CSV encoding with exact rationals kept as ``"p/q"`` strings."""
from __future__ import annotations

import csv
import enum
import io
import json
import math
from fractions import Fraction

from .poly import GaussianRational, Poly


def encode(value):
    """Convert a result object into JSON-ready builtins.

    Fractions and ints become strings (``"3"``, ``"-1/2"``); floats stay
    floats, which :mod:`json` writes as the shortest round-trip decimal.
    Non-finite floats are written as strings.
    """
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, (int, Fraction)):
        return str(value)
    if isinstance(value, float):
        return value if math.isfinite(value) else repr(value)
    if isinstance(value, GaussianRational):
        return {"re": str(value.re), "im": str(value.im)}
    if isinstance(value, Poly):
        return [encode(c) for c in value.coeffs] or [encode(Fraction(0))]
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if hasattr(value, "to_dict"):
        return encode(value.to_dict())
    return str(value)


def dumps(value) -> str:
    return json.dumps(encode(value), indent=2, ensure_ascii=False)


def _cell(value) -> str:
    out = encode(value)
    return out if isinstance(out, str) else repr(out)


def coeff_rows_csv(rows: list[Poly], label: str = "n") -> str:
    """One row per polynomial, ascending-degree columns ``c0, c1, ...``."""
    width = max((len(p.coeffs) for p in rows), default=1) or 1
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([label] + [f"c{k}" for k in range(width)])
    for n, p in enumerate(rows):
        coeffs = [p.coeff(k) for k in range(width)]
        writer.writerow([n] + [_cell(c) for c in coeffs])
    return buf.getvalue()


def table_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()
