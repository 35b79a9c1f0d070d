"""Deterministic text output.

Numbers are written with 9 significant digits, ``.`` as decimal separator
and LF line endings, so identical inputs give byte-identical files. Every
file is written to a temporary sibling and renamed into place.
"""

from __future__ import annotations

import io
import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .dispersion import group_delay

__all__ = [
    "fmt",
    "csv_text",
    "write_atomic",
    "write_csv",
    "json_text",
    "write_json",
    "gnuplot_text",
    "write_gnuplot",
    "profile_columns",
    "response_columns",
    "trace_columns",
    "counts_columns",
]


def fmt(x):
    return f"{x:.9g}"


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return None
        return float(fmt(x))
    return obj


def csv_text(columns):
    """CSV document from an ordered mapping of equal-length columns."""
    names = list(columns)
    data = np.column_stack([np.asarray(columns[k], dtype=float) for k in names])
    buf = io.StringIO()
    buf.write(",".join(names) + "\n")
    if data.size:
        np.savetxt(buf, data, fmt="%.9g", delimiter=",", newline="\n")
    return buf.getvalue()


def write_atomic(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def write_csv(path, columns):
    return write_atomic(path, csv_text(columns))


def json_text(obj):
    return json.dumps(_clean(obj), indent=2, sort_keys=True) + "\n"


def write_json(path, obj):
    return write_atomic(path, json_text(obj))


def gnuplot_text(blocks):
    """Whitespace-separated data blocks addressable with gnuplot's ``index``."""
    parts = []
    for name, columns in blocks:
        names = list(columns)
        data = np.column_stack([np.asarray(columns[k], dtype=float) for k in names])
        buf = io.StringIO()
        buf.write(f"# {name}\n# " + " ".join(names) + "\n")
        np.savetxt(buf, data, fmt="%.9g", delimiter=" ", newline="\n")
        parts.append(buf.getvalue())
    return "\n\n".join(parts)


def write_gnuplot(path, blocks):
    return write_atomic(path, gnuplot_text(blocks))


def profile_columns(profile):
    return {"detuning_hz": profile.detuning, "od": profile.od}


def response_columns(response):
    return {
        "detuning_hz": response.grid.detuning,
        "od": response.od,
        "phase_rad": response.phase,
        "tau_g_s": group_delay(response).tau_g,
    }


def trace_columns(pulse, window=None):
    t = pulse.times
    sel = slice(None) if window is None else (t >= window[0]) & (t <= window[1])
    a = pulse.samples[sel]
    return {"time_s": t[sel], "re": a.real, "im": a.imag, "power": np.abs(a) ** 2}


def counts_columns(records):
    return {
        "angle_deg": [np.degrees(r.angle) for r in records],
        "counts": [r.counts for r in records],
        "expected_rate_hz": [r.expected_rate for r in records],
        "seed": [r.seed for r in records],
    }
