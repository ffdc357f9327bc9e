"""Small file helpers shared by the pipeline.

All artifact writes go through :func:`atomic_write_text`: content lands in a
temp file next to the target and is moved into place with ``os.replace``, so
a crash never leaves a partial file at the final path.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

from .errors import MissingInput


def atomic_write_text(path: str | os.PathLike[str], text: str) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def require_file(path: str | os.PathLike[str]) -> Path:
    p = Path(path)
    if not p.is_file():
        raise MissingInput(f"input file not found: {p}")
    return p


def require_dir(path: str | os.PathLike[str]) -> Path:
    p = Path(path)
    if not p.is_dir():
        raise MissingInput(f"input directory not found: {p}")
    return p


def fmt_float(v: float) -> str:
    """Shortest round-trip decimal form; keeps CSV output deterministic."""
    return repr(float(v))
