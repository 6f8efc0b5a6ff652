"""On-disk memo of class groups, enabled by SOLCHIRAL_CACHE_DIR.

One file per discriminant, ``classgroup-<D>.json``:

    {"version": 1, "D": 136, "classes": [[a, b, c], ...]}

listing the canonical reduced form of every class.  Files are written to a
temporary name and renamed, so readers never see a partial file.
"""
from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path

from . import qform
from .qform import FormClass, QForm

ENV_VAR = "SOLCHIRAL_CACHE_DIR"
VERSION = 1

log = logging.getLogger(__name__)


def cache_dir() -> Path | None:
    d = os.environ.get(ENV_VAR)
    return Path(d) if d else None


def _path(root: Path, D: int) -> Path:
    return root / f"classgroup-{D}.json"


def _read(path: Path, D: int):
    data = json.loads(path.read_text(encoding="utf-8"))
    if data.get("version") != VERSION or data.get("D") != D:
        raise ValueError("version or discriminant mismatch")
    classes = [FormClass(QForm(*abc), D) for abc in data["classes"]]
    if any(qform.class_of(c.canonical) != c for c in classes):
        raise ValueError("non-canonical class representative")
    return qform.ClassGroup(D, classes)


def _write(path: Path, G) -> None:
    payload = {"version": VERSION, "D": G.discriminant, "classes": [list(c.canonical.coeffs()) for c in G]}
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh)
    os.replace(tmp, path)


def class_group(D: int):
    """qform.class_group(D), read from or written to the cache directory when set."""
    root = cache_dir()
    if root is None:
        return qform.class_group(D)
    path = _path(root, D)
    if path.exists():
        try:
            return _read(path, D)
        except (ValueError, KeyError, TypeError) as exc:
            log.warning("ignoring bad cache file %s: %s", path, exc)
    G = qform.class_group(D)
    _write(path, G)
    return G
