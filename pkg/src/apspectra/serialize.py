"""Deterministic JSON and flat-text emission for report dictionaries.

Reports must be byte-identical across reruns with the same inputs, so
floats are printed at a fixed number of significant digits, dictionary
order is preserved as built, and non-finite values map to null.
"""

from __future__ import annotations

import json
from typing import Iterable

import numpy as np


def format_float(x: float, digits: int = 17) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        return "null"
    text = format(float(x), f".{digits}g")
    return text


def dumps_stable(obj, float_digits: int = 17) -> str:
    pieces: list[str] = []
    _emit(obj, pieces, float_digits, 0)
    pieces.append("\n")
    return "".join(pieces)


def _emit(obj, out: list[str], digits: int, level: int) -> None:
    pad = "  " * level
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        items = list(obj.items())
        for i, (key, value) in enumerate(items):
            out.append("  " * (level + 1))
            out.append(json.dumps(str(key)))
            out.append(": ")
            _emit(value, out, digits, level + 1)
            out.append(",\n" if i < len(items) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if len(obj) == 0:
            out.append("[]")
            return
        out.append("[\n")
        for i, value in enumerate(obj):
            out.append("  " * (level + 1))
            _emit(value, out, digits, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "]")
    elif isinstance(obj, bool) or isinstance(obj, np.bool_):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(format_float(float(obj), digits))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif obj is None:
        out.append("null")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} deterministically")


def flatten(obj, prefix: str = "") -> Iterable[tuple[str, object]]:
    """Depth-first (dotted-key, scalar) pairs of a nested report."""
    if isinstance(obj, dict):
        for key, value in obj.items():
            yield from flatten(value, f"{prefix}.{key}" if prefix else str(key))
    elif isinstance(obj, (list, tuple)):
        for i, value in enumerate(obj):
            yield from flatten(value, f"{prefix}.{i}" if prefix else str(i))
    else:
        yield prefix, obj
