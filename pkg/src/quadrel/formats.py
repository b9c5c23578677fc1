"""Text formats for keys, pairs and transcripts.

Secret key::

    GF2M m=5 mod=0x25
    x: 3 1f 0 ...
    gamma: 7 1 1

Pair files use ``x:`` and ``y:`` lines (and optionally ``gamma:``).  Field
elements are lower-case hex; polynomials are listed low to high.  Public keys
use the matrix text format of ``linalg.format_matrix``.
"""

from __future__ import annotations

import json

import numpy as np

from .codes import SupportMultiplier, goppa_code
from .errors import ParseError
from .gf2m import GF2m


def _hex(vals) -> str:
    return " ".join(f"{int(v):x}" for v in vals)


def _parse_lines(text: str) -> tuple[GF2m, dict[str, list[int]]]:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty file")
    F = GF2m.from_header(lines[0])
    fields: dict[str, list[int]] = {}
    for ln in lines[1:]:
        key, sep, rest = ln.partition(":")
        if not sep:
            raise ParseError(f"expected 'name: values', got {ln!r}")
        key = key.strip()
        if key in fields:
            raise ParseError(f"duplicate line {key!r}")
        try:
            vals = [int(t, 16) for t in rest.split()]
        except ValueError as exc:
            raise ParseError(f"bad hex value on line {key!r}") from exc
        if any(not 0 <= v < F.order for v in vals):
            raise ParseError(f"value out of field range on line {key!r}")
        fields[key] = vals
    return F, fields


def format_secret(F: GF2m, x, gamma) -> str:
    return f"{F.header()}\nx: {_hex(x)}\ngamma: {_hex(gamma)}\n"


def parse_secret(text: str) -> tuple[GF2m, np.ndarray, list[int]]:
    F, fields = _parse_lines(text)
    for k in ("x", "gamma"):
        if k not in fields:
            raise ParseError(f"missing {k!r} line")
    gamma = fields["gamma"]
    if not gamma or gamma[-1] == 0:
        raise ParseError("gamma must have a nonzero leading coefficient")
    return F, np.array(fields["x"], dtype=np.int64), gamma


def public_from_secret(F: GF2m, x, gamma) -> np.ndarray:
    return goppa_code(F, x, gamma)


def format_pair(F: GF2m, sm: SupportMultiplier, gamma=None) -> str:
    out = f"{F.header()}\nx: {_hex(sm.x)}\ny: {_hex(sm.y)}\n"
    if gamma is not None:
        out += f"gamma: {_hex(gamma)}\n"
    return out


def parse_pair(text: str) -> tuple[GF2m, SupportMultiplier, list[int] | None]:
    F, fields = _parse_lines(text)
    for k in ("x", "y"):
        if k not in fields:
            raise ParseError(f"missing {k!r} line")
    if len(fields["x"]) != len(fields["y"]):
        raise ParseError("x and y have different lengths")
    try:
        sm = SupportMultiplier(np.array(fields["x"]), np.array(fields["y"]))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return F, sm, fields.get("gamma")


# ---------------------------------------------------------------------------
# transcripts


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.3f}"
    if isinstance(v, (list, tuple)):
        return ",".join(_scalar(u) for u in v)
    if v is None:
        return "none"
    return str(v)


def format_kv(record: dict) -> str:
    """One ``key=value`` per line; nested dicts are flattened with dots."""
    lines = []

    def walk(prefix: str, obj):
        if isinstance(obj, dict):
            for k, v in obj.items():
                walk(f"{prefix}.{k}" if prefix else str(k), v)
        else:
            lines.append(f"{prefix}={_scalar(obj)}")

    walk("", record)
    return "\n".join(lines) + "\n"


def parse_kv(text: str) -> dict[str, str]:
    out = {}
    for ln in text.splitlines():
        if not ln.strip():
            continue
        k, sep, v = ln.partition("=")
        if not sep:
            raise ParseError(f"expected key=value, got {ln!r}")
        out[k] = v
    return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, float):
        return round(obj, 3)
    if hasattr(obj, "__dataclass_fields__"):
        return {k: _jsonable(getattr(obj, k)) for k in obj.__dataclass_fields__}
    return obj


def format_json(record: dict) -> str:
    return json.dumps(_jsonable(record), indent=1, sort_keys=True) + "\n"
