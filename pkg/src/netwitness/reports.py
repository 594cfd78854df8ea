"""Deterministic report emission: canonical JSON and flat CSV.

Identical inputs must produce byte-identical files, so floats are printed
with a fixed %.12e format, keys are sorted, and no timestamps or absolute
paths enter a report.
"""

from __future__ import annotations

import io
import json

import numpy as np

VERSION = "0.1.0"

TOLERANCES = {
    "structural": 1e-10,
    "reconstruction": 1e-9,
    "ppt_floor": -1e-9,
    "sep_floor": -1e-6,
    "verdict_band": 1e-9,
}


def _format_scalar(x) -> str:
    if x is None:
        return "null"
    if isinstance(x, bool) or isinstance(x, np.bool_):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.12e}"
    if isinstance(x, str):
        return json.dumps(x)
    raise TypeError(f"unsupported report value type {type(x)!r}")


def canonical_json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = []
        for key in sorted(obj):
            parts.append(f"{inner}{json.dumps(str(key))}: {canonical_json(obj[key], indent + 1)}")
        return "{\n" + ",\n".join(parts) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(np.asarray(obj).tolist()) if isinstance(obj, np.ndarray) else list(obj)
        if not seq:
            return "[]"
        parts = [f"{inner}{canonical_json(v, indent + 1)}" for v in seq]
        return "[\n" + ",\n".join(parts) + f"\n{pad}]"
    return _format_scalar(obj)


def base_report(command: str, inputs: dict) -> dict:
    return {
        "command": command,
        "version": VERSION,
        "tolerances": dict(TOLERANCES),
        "inputs": inputs,
        "outputs": {},
    }


def _flatten_scalars(obj, prefix: str = "", out=None) -> dict:
    if out is None:
        out = {}
    if isinstance(obj, dict):
        for key in sorted(obj):
            path = f"{prefix}.{key}" if prefix else str(key)
            _flatten_scalars(obj[key], path, out)
    elif isinstance(obj, (str, int, float, bool)) or obj is None:
        out[prefix] = obj
    # lists and matrices are dropped from the CSV view
    return out


def to_csv(report: dict) -> str:
    flat = _flatten_scalars(report)
    keys = sorted(flat)
    buf = io.StringIO()
    buf.write(",".join(json.dumps(k) for k in keys) + "\n")
    cells = [
        json.dumps(flat[k]) if isinstance(flat[k], str) else _format_scalar(flat[k])
        for k in keys
    ]
    buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def emit_report(report: dict, path: str | None, fmt: str = "json") -> str:
    """Render the report; write it to ``path`` when given. Returns the text."""
    if fmt == "json":
        text = canonical_json(report) + "\n"
    elif fmt == "csv":
        text = to_csv(report)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
