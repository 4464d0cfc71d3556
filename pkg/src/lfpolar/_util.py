"""Small shared helpers: index rounding and atomic file writes."""

from __future__ import annotations

import os
import tempfile

import numpy as np


def round_half_away(t):
    """Round to the nearest integer, ties away from zero.

    Python's built-in round() rounds ties to even, which is the wrong
    convention for index formation here: every place a continuous
    coordinate becomes a pixel or bin index uses this function, so the
    convention is uniform across the package.

    Accepts scalars or arrays; returns int64 (array in, array out).
    """
    t = np.asarray(t, dtype=float)
    out = np.where(t >= 0.0, np.floor(t + 0.5), np.ceil(t - 0.5))
    out = out.astype(np.int64)
    if out.ndim == 0:
        return int(out)
    return out


def atomic_write_bytes(path, data: bytes) -> None:
    """Write bytes to path via a temporary file and rename.

    A crashed or interrupted run never leaves a half-written file at the
    destination; the rename is atomic on POSIX filesystems.
    """
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        try:
            os.write(fd, data)
        finally:
            os.close(fd)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def atomic_write_text(path, text: str) -> None:
    """Write text (LF line endings, UTF-8) atomically."""
    atomic_write_bytes(path, text.encode("utf-8"))
