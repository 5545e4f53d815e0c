"""Deterministic JSON/CSV report emission.

Reports must be byte-identical across runs with the same inputs: fields keep
their insertion order, every float is printed with 17 significant digits
(enough to round-trip a double exactly), and files are written atomically
via a temp file and os.replace.
"""

from __future__ import annotations

import math
import os
import tempfile
from fractions import Fraction
from typing import Any, Iterable, Sequence


def fmt_float(x: float) -> str:
    if isinstance(x, bool):  # guard: bools are ints are floats-adjacent
        return "true" if x else "false"
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return f"{x:.17g}"


def json_dumps(obj: Any, indent: int = 0) -> str:
    """Minimal JSON serializer with fixed float formatting and key order.

    Accepts dict/list/tuple/str/bool/None/int/float/complex/Fraction; complex
    becomes {"re": ..., "im": ...} and Fraction becomes its "r/s" literal.
    """
    pad = " " * indent
    inner = " " * (indent + 2)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, complex):
        return json_dumps({"re": obj.real, "im": obj.imag}, indent)
    if isinstance(obj, Fraction):
        return json_dumps(f"{obj.numerator}/{obj.denominator}", indent)
    if isinstance(obj, str):
        out = obj.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
        return f'"{out}"'
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f'{inner}"{k}": {json_dumps(v, indent + 2)}' for k, v in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = ",\n".join(f"{inner}{json_dumps(v, indent + 2)}" for v in obj)
        return "[\n" + items + "\n" + pad + "]"
    # fall back on numpy scalars and anything float-like
    if hasattr(obj, "item"):
        return json_dumps(obj.item(), indent)
    raise TypeError(f"cannot serialize {type(obj)!r}")


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    def cell(v) -> str:
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, float):
            return fmt_float(v)
        if hasattr(v, "item"):
            return cell(v.item())
        return str(v)

    lines = [",".join(header)]
    lines.extend(",".join(cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def atomic_write(path: str, text: str) -> None:
    """Write text to path atomically (temp file in the same directory + replace)."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".fracmoment-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def emit(report: Any, fmt: str, path: str | None) -> str:
    """Serialize a report dict ('json') or (header, rows) pair ('csv').

    Writes to path when given (atomically); always returns the text.
    """
    if fmt == "json":
        text = json_dumps(report) + "\n"
    elif fmt == "csv":
        header, rows = report
        text = csv_text(header, rows)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path:
        atomic_write(path, text)
    return text
