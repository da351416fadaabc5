"""Independent reference implementations used to check production code.

These deliberately avoid the code paths under test: IoU is counted on a
pixel grid, the affine fit runs a generic quasi-Newton minimizer, and the
matcher re-derives greedy assignment by repeated argmax over a live
candidate table.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import minimize


def pixel_iou(a: tuple[int, int, int, int], b: tuple[int, int, int, int], grid: int = 1000) -> float:
    """IoU by counting cells of a grid x grid raster; boxes in integer pixels."""
    ga = np.zeros((grid, grid), dtype=bool)
    gb = np.zeros((grid, grid), dtype=bool)
    ga[a[1] : a[3], a[0] : a[2]] = True
    gb[b[1] : b[3], b[0] : b[2]] = True
    union = np.logical_or(ga, gb).sum()
    if union == 0:
        return 1.0 if a == b else 0.0
    inter = np.logical_and(ga, gb).sum()
    return float(inter) / float(union)


def bfgs_affine(src: np.ndarray, dst: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
    """Fit dst ~= A src + t by numerically minimizing the mean squared point
    error over the 6 parameters; returns (A, t, objective at optimum)."""
    src = np.asarray(src, float)
    dst = np.asarray(dst, float)
    n = src.shape[0]

    def unpack(theta):
        return theta[:4].reshape(2, 2), theta[4:6]

    def objective(theta):
        A, t = unpack(theta)
        resid = dst - (src @ A.T + t)
        return float(np.mean(np.sum(resid**2, axis=1)))

    def grad(theta):
        A, t = unpack(theta)
        resid = dst - (src @ A.T + t)  # (n, 2)
        g_A = -2.0 / n * (resid.T @ src)  # (2, 2)
        g_t = -2.0 / n * resid.sum(axis=0)
        return np.concatenate([g_A.ravel(), g_t])

    theta0 = np.array([1.0, 0.0, 0.0, 1.0, 0.0, 0.0])
    res = minimize(objective, theta0, jac=grad, method="BFGS", options={"gtol": 1e-14, "maxiter": 1000})
    A, t = unpack(res.x)
    return A, t, float(res.fun)


def greedy_match_reference(
    prev_boxes: list, cur_boxes: list, iou_of, iou_min: float
) -> list[tuple[int, int]]:
    """Greedy one-to-one matching by repeated scan for the best remaining
    candidate (highest IoU, then lowest previous index, then lowest current
    index)."""
    free_prev = set(range(len(prev_boxes)))
    free_cur = set(range(len(cur_boxes)))
    matches = []
    while True:
        best = None
        for i in sorted(free_prev):
            for j in sorted(free_cur):
                iou = iou_of(prev_boxes[i], cur_boxes[j])
                if iou < iou_min:
                    continue
                key = (-iou, i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
        if best is None:
            return matches
        _, i, j = best
        matches.append((i, j))
        free_prev.remove(i)
        free_cur.remove(j)


def tracklets_reference(frames, iou_of, iou_min: float) -> list[list[tuple[int, int]]]:
    """Tracklets as lists of (frame position, detection index), built with the
    reference matcher; ids follow encounter order like the production code."""
    if not frames:
        return []
    tracklets: list[list[tuple[int, int]]] = [[(0, d)] for d in range(len(frames[0].persons))]
    # tid -> detection index in the previous frame
    alive = {tid: entry[-1][1] for tid, entry in enumerate(tracklets)}
    for pos in range(1, len(frames)):
        prev_frame, cur_frame = frames[pos - 1], frames[pos]
        alive_ids = sorted(alive)
        prev_boxes = [prev_frame.persons[alive[tid]].bbox for tid in alive_ids]
        cur_boxes = [p.bbox for p in cur_frame.persons]
        pairs = greedy_match_reference(prev_boxes, cur_boxes, iou_of, iou_min)
        next_alive = {}
        matched_cur = set()
        for pi, cj in pairs:
            tid = alive_ids[pi]
            tracklets[tid].append((pos, cj))
            next_alive[tid] = cj
            matched_cur.add(cj)
        for cj in range(len(cur_boxes)):
            if cj not in matched_cur:
                tid = len(tracklets)
                tracklets.append([(pos, cj)])
                next_alive[tid] = cj
        alive = next_alive
    return tracklets


def l1_motion_reference(tracklet, conf_min: float) -> list[float | None]:
    """Straight-line recomputation of per-pair mean L1 keypoint motion."""
    result = []
    entries = list(tracklet.entries)
    for idx in range(len(entries) - 1):
        _, a = entries[idx]
        _, b = entries[idx + 1]
        dists = []
        for kk in range(len(a.keypoints)):
            ka, kb = a.keypoints[kk], b.keypoints[kk]
            if ka.confidence >= conf_min and kb.confidence >= conf_min:
                dists.append(abs(ka.h - kb.h) + abs(ka.w - kb.w))
        result.append(sum(dists) / len(dists) if len(dists) >= 3 else None)
    return result
