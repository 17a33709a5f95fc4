"""Canonical JSON for CLI reports.

Floats are written with 17 significant digits ('%.17g'), which is enough to
reconstruct the exact double; keys keep their insertion order.  Because the
formatting is a function of the parsed value alone, loading a report and
dumping it again reproduces the bytes exactly.
"""

from __future__ import annotations

import json
import math

__all__ = ["dumps", "loads"]


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"cannot serialize non-finite float {x!r}")
    return format(x, ".17g")


def _write(obj, out: list) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_fmt_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=True))
    elif isinstance(obj, dict):
        out.append("{")
        for pos, (key, value) in enumerate(obj.items()):
            if not isinstance(key, str):
                raise TypeError(f"object keys must be strings, got {key!r}")
            if pos:
                out.append(", ")
            out.append(json.dumps(key, ensure_ascii=True))
            out.append(": ")
            _write(value, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for pos, value in enumerate(obj):
            if pos:
                out.append(", ")
            _write(value, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Serialize to a single canonical line (no trailing newline)."""
    out: list[str] = []
    _write(obj, out)
    return "".join(out)


def loads(text: str):
    return json.loads(text)
