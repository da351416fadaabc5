"""Geometric kernel: IoU, tracklet linking, keypoint motion, and affine fits.

The affine fit is the heart of the camera-motion discriminator. Keypoints
that only move because the camera pans, zooms, rotates or shears between two
sampled frames are (nearly) an exact affine image of the previous frame's
keypoints, so the least-squares residual of the best-fitting affine map
separates camera-induced motion from genuine articulation.

Points are (h, w) pairs in normalized coordinates throughout, matching the
keypoint storage order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .records import BoundingBox, PoseFrame, Tracklet

DEFAULT_SV_CUTOFF = 1e-10


class InsufficientPointsError(ValueError):
    """Fewer than 3 usable point pairs; the affine fit is underdetermined."""


@dataclass(frozen=True, eq=False)
class AffineFit:
    """Fitted map dst ~= matrix @ src + translation, with its residual.

    ``residual`` is the mean squared Euclidean point error in normalized
    coordinate units squared, averaged over the points used. ``degenerate``
    marks fits that needed the minimum-norm pseudo-inverse fallback
    (collinear source points).
    """

    matrix: np.ndarray  # (2, 2), acts on (h, w) column vectors
    translation: np.ndarray  # (2,)
    residual: float
    n_points: int
    degenerate: bool = False

    def homogeneous(self) -> np.ndarray:
        """The 3x3 matrix with bottom row (0, 0, 1)."""
        out = np.eye(3)
        out[:2, :2] = self.matrix
        out[:2, 2] = self.translation
        return out

    def apply(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        return pts @ self.matrix.T + self.translation


@dataclass(frozen=True)
class PointCorrespondence:
    """Matched point sets between two frames, with an optional inclusion mask."""

    src: np.ndarray  # (n, 2)
    dst: np.ndarray  # (n, 2)
    include: np.ndarray | None = None  # (n,) bool

    def __post_init__(self):
        src = np.asarray(self.src, dtype=float)
        dst = np.asarray(self.dst, dtype=float)
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        if src.shape != dst.shape or src.ndim != 2 or src.shape[1] != 2:
            raise ValueError(
                f"src and dst must both be (n, 2), got {src.shape} and {dst.shape}"
            )
        if self.include is not None:
            mask = np.asarray(self.include, dtype=bool)
            if mask.shape != (src.shape[0],):
                raise ValueError("include mask must be (n,)")
            object.__setattr__(self, "include", mask)


def compute_iou(a: BoundingBox, b: BoundingBox) -> float:
    """Intersection-over-union of two boxes, in [0, 1].

    Two degenerate (zero-area) boxes compare as 1.0 when identical and 0.0
    otherwise; valid boxes always have a positive union.
    """
    ix = min(a.x2, b.x2) - max(a.x1, b.x1)
    iy = min(a.y2, b.y2) - max(a.y1, b.y1)
    inter = max(0.0, ix) * max(0.0, iy)
    union = a.area + b.area - inter
    if union <= 0.0:
        return 1.0 if a == b else 0.0
    return inter / union


def build_tracklets(frames: Sequence[PoseFrame], iou_min: float) -> list[Tracklet]:
    """Link detections across consecutive frames by greedy IoU matching.

    Candidate (tracklet, detection) pairs are taken in order of decreasing
    IoU, ties broken by lower tracklet id then lower detection index; pairs
    below ``iou_min`` never match. Unmatched detections start new tracklets
    with ids assigned in encounter order, and a tracklet that misses a frame
    is terminated (no gap bridging). Deterministic for identical input.
    """
    entries: list[list[tuple[int, object]]] = []
    active_dets: dict[int, object] = {}  # tracklet id -> detection in previous frame

    if not frames:
        return []

    for det in frames[0].persons:
        tid = len(entries)
        entries.append([(frames[0].frame_index, det)])
        active_dets[tid] = det

    for prev, cur in zip(frames, frames[1:]):
        candidates = []
        for tid, last_det in active_dets.items():
            for di, det in enumerate(cur.persons):
                iou = compute_iou(last_det.bbox, det.bbox)
                if iou >= iou_min:
                    candidates.append((-iou, tid, di))
        candidates.sort()

        matched_t: set[int] = set()
        matched_d: set[int] = set()
        next_active: dict[int, object] = {}
        for neg_iou, tid, di in candidates:
            if tid in matched_t or di in matched_d:
                continue
            matched_t.add(tid)
            matched_d.add(di)
            det = cur.persons[di]
            entries[tid].append((cur.frame_index, det))
            next_active[tid] = det
        for di, det in enumerate(cur.persons):
            if di not in matched_d:
                tid = len(entries)
                entries.append([(cur.frame_index, det)])
                next_active[tid] = det
        active_dets = next_active

    return [Tracklet(tid, tuple(e)) for tid, e in enumerate(entries)]


def keypoint_motion_l1(tracklet: Tracklet, conf_min: float) -> list[float | None]:
    """Per-adjacent-pair mean L1 keypoint displacement along a tracklet.

    For every consecutive entry pair, averages |dh| + |dw| over the keypoints
    whose confidence reaches ``conf_min`` in both frames. Pairs with fewer
    than 3 mutually visible keypoints yield ``None`` (insufficient evidence).
    Tracklets with fewer than 2 entries yield an empty list.
    """
    out: list[float | None] = []
    for (_, d0), (_, d1) in zip(tracklet.entries, tracklet.entries[1:]):
        total = 0.0
        n = 0
        for k0, k1 in zip(d0.keypoints, d1.keypoints):
            if k0.confidence >= conf_min and k1.confidence >= conf_min:
                total += abs(k1.h - k0.h) + abs(k1.w - k0.w)
                n += 1
        out.append(total / n if n >= 3 else None)
    return out


def fit_affine_arrays(
    src: np.ndarray,
    dst: np.ndarray,
    sv_cutoff: float = DEFAULT_SV_CUTOFF,
) -> AffineFit:
    """Least-squares affine fit dst ~= A @ src + t on (n, 2) point arrays.

    Solved per output coordinate via the 3x3 normal equations of the design
    matrix [h, w, 1]. When the normal matrix is rank-deficient (collinear
    points), singular values below ``sv_cutoff`` are zeroed, giving the
    minimum-norm solution, and the fit is flagged degenerate.
    """
    src = np.asarray(src, dtype=float)
    dst = np.asarray(dst, dtype=float)
    n = src.shape[0]
    if n < 3:
        raise InsufficientPointsError(f"need at least 3 point pairs, got {n}")

    design = np.column_stack([src, np.ones(n)])  # (n, 3)
    gram = design.T @ design  # (3, 3)
    rhs = design.T @ dst  # (3, 2)

    u, s, vt = np.linalg.svd(gram)
    degenerate = bool(s.min() < sv_cutoff)
    inv_s = np.zeros_like(s)
    inv_s[s >= sv_cutoff] = 1.0 / s[s >= sv_cutoff]
    beta = vt.T @ (inv_s[:, None] * (u.T @ rhs))  # (3, 2)

    matrix = beta[:2, :].T  # rows are output coords
    translation = beta[2, :]
    pred = src @ matrix.T + translation
    residual = float(np.mean(np.sum((dst - pred) ** 2, axis=1)))
    return AffineFit(
        matrix=matrix,
        translation=translation,
        residual=residual,
        n_points=n,
        degenerate=degenerate,
    )


def fit_affine(corr: PointCorrespondence, sv_cutoff: float = DEFAULT_SV_CUTOFF) -> AffineFit:
    """Fit the affine map for a correspondence, honoring its inclusion mask."""
    if corr.include is not None:
        src = corr.src[corr.include]
        dst = corr.dst[corr.include]
    else:
        src, dst = corr.src, corr.dst
    return fit_affine_arrays(src, dst, sv_cutoff=sv_cutoff)


def _tracked_pairs(
    fa: PoseFrame,
    fb: PoseFrame,
    indexes: Sequence[dict],
    conf_min: float,
) -> list[tuple[list[list[float]], list[list[float]]]]:
    """Per-tracklet (src, dst) keypoint lists for one adjacent frame pair."""
    out = []
    for by_frame in indexes:
        da = by_frame.get(fa.frame_index)
        db = by_frame.get(fb.frame_index)
        if da is None or db is None:
            continue
        src, dst = [], []
        for ka, kb in zip(da.keypoints, db.keypoints):
            if ka.confidence >= conf_min and kb.confidence >= conf_min:
                src.append([ka.h, ka.w])
                dst.append([kb.h, kb.w])
        if src:
            out.append((src, dst))
    return out


def clip_affine_residual(
    frames: Sequence[PoseFrame],
    tracklets: Sequence[Tracklet],
    conf_min: float,
    scope: str = "pooled",
) -> float | None:
    """Mean best-affine residual over all adjacent frame pairs of a clip.

    With ``scope="pooled"`` (the default) the keypoints of every tracklet
    present in both frames of a pair are pooled into a single fit, since
    camera motion acts globally; ``scope="per_tracklet"`` fits each tracklet
    separately and averages the residuals. Pairs with fewer than 3 usable
    keypoints are skipped; returns ``None`` (undecidable) when no pair could
    be fitted or fewer than 2 frames were given.
    """
    if scope not in ("pooled", "per_tracklet"):
        raise ValueError(f"unknown scope {scope!r}")
    if len(frames) < 2:
        return None

    indexes = [{fi: det for fi, det in t.entries} for t in tracklets]
    pair_residuals: list[float] = []
    for fa, fb in zip(frames, frames[1:]):
        groups = _tracked_pairs(fa, fb, indexes, conf_min)
        if scope == "pooled":
            src = [p for g in groups for p in g[0]]
            dst = [p for g in groups for p in g[1]]
            if len(src) < 3:
                continue
            pair_residuals.append(fit_affine_arrays(np.array(src), np.array(dst)).residual)
        else:
            fits = [
                fit_affine_arrays(np.array(s), np.array(d)).residual
                for s, d in groups
                if len(s) >= 3
            ]
            if fits:
                pair_residuals.append(float(np.mean(fits)))
    if not pair_residuals:
        return None
    return float(np.mean(pair_residuals))
