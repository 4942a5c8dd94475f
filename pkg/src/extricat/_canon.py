"""Canonical serialization helpers.

Reports and golden files must be byte-identical across reruns, so every
serialization goes through :func:`canonical_json` (sorted keys, fixed
separators, no ASCII escaping) and hashes through :func:`content_hash`.
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any


def _jsonable(value: Any) -> Any:
    """Recursively convert values to JSON-serializable canonical forms.

    Fractions become "p/q" strings (exactness survives the round trip),
    tuples become lists, sets become sorted lists.
    """
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_jsonable(v) for v in value)
    return value


def canonical_json(data: Any) -> str:
    return json.dumps(_jsonable(data), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def content_hash(data: Any) -> str:
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()
