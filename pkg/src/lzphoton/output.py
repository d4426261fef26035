"""Deterministic file output: CSV at full precision, JSON manifests.

Files are written atomically (temp + rename) and contain no timestamps, so
identical configurations produce byte-identical output.
"""

from __future__ import annotations

import json
import os
import tempfile

__all__ = ["fmt", "write_csv", "write_json"]


def fmt(x) -> str:
    """Full-precision decimal rendering (17 significant digits)."""
    if x is None:
        return ""
    return format(float(x), ".17g")


def _atomic_write(path: str, data: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path: str, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(x) for x in row))
    _atomic_write(path, "\n".join(lines) + "\n")


def write_json(path: str, obj) -> None:
    _atomic_write(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")
