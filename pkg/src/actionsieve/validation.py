"""Input validation helpers shared by the estimator-style API."""

from __future__ import annotations

import numpy as np

from .records import ClipRecord


def check_points(X, name: str = "X") -> np.ndarray:
    """Coerce to a finite float (n, 2) array of (h, w) points."""
    arr = np.asarray(X, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"{name} must have shape (n, 2), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def check_paired_points(X, y) -> tuple[np.ndarray, np.ndarray]:
    src = check_points(X, "X")
    dst = check_points(y, "y")
    if src.shape[0] != dst.shape[0]:
        raise ValueError(f"X and y disagree on n: {src.shape[0]} vs {dst.shape[0]}")
    return src, dst


def check_clip_records(X, name: str = "X") -> list[ClipRecord]:
    records = list(X)
    for i, rec in enumerate(records):
        if not isinstance(rec, ClipRecord):
            raise TypeError(f"{name}[{i}] is {type(rec).__name__}, expected ClipRecord")
    return records
