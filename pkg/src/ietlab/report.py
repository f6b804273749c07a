"""Serialization helpers: exact JSON/CSV encodings and atomic file output."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path

from . import __version__


def rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def strs(values) -> list[str]:
    """Decimal strings for a vector of big integers."""
    return [str(v) for v in values]


def matrix_strs(m) -> list[list[str]]:
    return [strs(row) for row in m]


def _default(obj):
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, tuple):
        return list(obj)
    # mpmath numbers and enums
    return str(obj)


def envelope(config: dict, results, passed: bool) -> dict:
    return {
        "tool_version": __version__,
        "config": config,
        "results": results,
        "verdict": "pass" if passed else "fail",
    }


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, default=_default) + "\n"


def to_csv(fieldnames: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def atomic_write(path: str | os.PathLike, text: str):
    """Write to a temporary sibling, then rename over ``path``."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
