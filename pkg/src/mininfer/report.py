"""Text, CSV and JSON renderings of inference results and scenario rows.

Floats are written with 17 significant digits so every number read back is
bit-identical to the one computed.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, is_dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .quantum import BELL_LABELS, bell_overlaps
from .results import InferenceResult

RUN_COLUMNS = ["method", "verdict", "entropy", "F", "concurrence", "E_f", "E_r", "separable"] + [
    f"{part}_{i}{j}" for part in ("re", "im") for i in range(4) for j in range(4)
]


def fmt_float(x: float) -> Optional[str]:
    x = float(x)
    if not math.isfinite(x):
        return None
    return format(x, ".17g")


def _plain(obj):
    """Convert numpy and dataclass values to plain Python containers."""
    if is_dataclass(obj) and not isinstance(obj, type):
        return _plain(obj.as_dict() if hasattr(obj, "as_dict") else asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def _dump(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        s = fmt_float(obj)
        return "null" if s is None else s
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(_dump(v, indent, level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + _dump(v, indent, level + 1) for v in obj) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def to_json(obj, indent: int = 2) -> str:
    return _dump(_plain(obj), indent, 0) + "\n"


def run_record(result: InferenceResult, verdict: Optional[str] = None) -> dict:
    summary = result.summary.as_dict()
    summary["entropy"] = result.entropy
    summary["bell_weights"] = bell_overlaps(result.state)
    return {
        "method": result.method,
        "state": {"re": result.state.real, "im": result.state.imag},
        "diagnostics": result.diagnostics.as_dict(),
        "summary": summary,
        "verdict": verdict,
    }


def _cell(v) -> str:
    v = _plain(v)
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v) or ""
    return str(v)


def to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def run_row(result: InferenceResult, verdict: Optional[str] = None) -> list:
    s = result.summary
    return [result.method, verdict, result.entropy, s.F, s.concurrence, s.E_f, s.E_r, s.separable,
            *result.state.real.ravel(), *result.state.imag.ravel()]


def _matrix_lines(M: np.ndarray) -> list[str]:
    return ["  [" + "  ".join(f"{v: .10f}" for v in row) + "]" for row in M]


def run_text(result: InferenceResult, verdict: Optional[str] = None) -> str:
    s = result.summary
    lines = [f"method: {result.method}", f"entropy S = {fmt_float(result.entropy)} nats", "state (real part):"]
    lines += _matrix_lines(result.state.real)
    if np.max(np.abs(result.state.imag)) > 0:
        lines += ["state (imaginary part):"] + _matrix_lines(result.state.imag)
    weights = ", ".join(f"{l}={fmt_float(p)}" for l, p in zip(BELL_LABELS, bell_overlaps(result.state)))
    lines.append(f"Bell weights: {weights}")
    E_r = "n/a" if s.E_r is None else fmt_float(s.E_r)
    lines.append(
        f"F = {fmt_float(s.F)}, concurrence = {fmt_float(s.concurrence)}, "
        f"E_f = {fmt_float(s.E_f)}, E_r = {E_r}, separable = {_cell(s.separable)}"
    )
    for k, v in result.diagnostics.as_dict().items():
        if k == "bell_weights":
            continue
        lines.append(f"  {k}: {_dump(_plain(v), 0, 0).replace(chr(10), '')}")
    if verdict is not None:
        lines.append(f"verdict: {verdict}")
    return "\n".join(lines) + "\n"
