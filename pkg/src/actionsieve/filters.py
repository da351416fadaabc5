"""The three-stage clip filter cascade.

Stage order: metadata (resolution, duration, verb in caption), human
existence (1-5 people in every sampled frame with enough screen coverage),
human action (someone actually moves, and the motion is not explainable as
a global affine camera transform). Every stage emits a ``StageVerdict`` so
each decision can be audited; the cascade short-circuits on the first fail.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, fields
from importlib import resources
from pathlib import Path
from typing import Sequence

from .motion import build_tracklets, clip_affine_residual, keypoint_motion_l1
from .records import ClipMeta, ClipRecord, PoseFrame, StageVerdict

EXISTENCE_FRAMES_REQUIRED = 16

_TOKEN_RE = re.compile(r"[a-z']+")


@dataclass(frozen=True)
class FilterConfig:
    """All cascade thresholds in one immutable bundle.

    Defaults encode the published operating point: clips of 5-20 s, 1-5
    humans covering at least 10% of the frame, per-second keypoint L1 motion
    above 0.085, and an affine-fit residual above 0.0016 (anything below is
    treated as camera-induced motion). ``min_short_side``, ``iou_min`` and
    ``conf_min`` are engineering defaults.
    """

    min_short_side: int = 360
    min_clip_s: float = 5.0
    max_clip_s: float = 20.0
    min_humans: int = 1
    max_humans: int = 5
    min_coverage: float = 0.10
    l1_threshold: float = 0.085
    affine_residual_threshold: float = 0.0016
    iou_min: float = 0.3
    conf_min: float = 0.3
    require_all_tracklets: bool = False
    affine_scope: str = "pooled"

    def __post_init__(self):
        if self.min_clip_s >= self.max_clip_s:
            raise ValueError("min_clip_s must be < max_clip_s")
        if self.min_humans > self.max_humans:
            raise ValueError("min_humans must be <= max_humans")
        for name in (
            "min_short_side",
            "min_clip_s",
            "min_coverage",
            "l1_threshold",
            "affine_residual_threshold",
            "iou_min",
            "conf_min",
        ):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.affine_scope not in ("pooled", "per_tracklet"):
            raise ValueError(f"unknown affine_scope {self.affine_scope!r}")


def config_field_names() -> tuple[str, ...]:
    return tuple(f.name for f in fields(FilterConfig))


def load_verb_lexicon(path: str | Path | None = None) -> frozenset[str]:
    """Load the verb lexicon: one lowercase lemma or inflected form per line.

    Without a path, the bundled English lexicon ships with the package.
    """
    if path is None:
        text = (
            resources.files("actionsieve").joinpath("data/verbs.txt").read_text("utf-8")
        )
    else:
        text = Path(path).read_text("utf-8")
    return frozenset(
        w.strip().lower() for w in text.splitlines() if w.strip() and not w.startswith("#")
    )


def _is_verb_tag(tag: str) -> bool:
    # Universal "VERB" or Penn Treebank "VB*"
    u = tag.upper()
    return u == "VERB" or u.startswith("VB")


def caption_has_verb(meta: ClipMeta, verb_lexicon: frozenset[str]) -> bool:
    """Verb presence: trust part-of-speech tags when given, else look tokens up."""
    if meta.caption_pos_tags is not None:
        return any(_is_verb_tag(tag) for _, tag in meta.caption_pos_tags)
    tokens = _TOKEN_RE.findall(meta.caption.lower())
    return any(tok.strip("'") in verb_lexicon for tok in tokens)


def metadata_filter(
    meta: ClipMeta, verb_lexicon: frozenset[str], cfg: FilterConfig
) -> StageVerdict:
    """Resolution floor, duration window (inclusive), verb-in-caption check."""
    short_side = min(meta.width, meta.height)
    if short_side < cfg.min_short_side:
        return StageVerdict(
            "metadata", False, None,
            f"short side {short_side} < {cfg.min_short_side}",
        )
    if not (cfg.min_clip_s <= meta.duration_s <= cfg.max_clip_s):
        return StageVerdict(
            "metadata", False, None,
            f"duration {meta.duration_s:g}s outside [{cfg.min_clip_s:g}, {cfg.max_clip_s:g}]",
        )
    if not caption_has_verb(meta, verb_lexicon):
        return StageVerdict("metadata", False, None, "no verb in caption")
    return StageVerdict("metadata", True, None, "ok")


def human_existence_filter(
    frames: Sequence[PoseFrame], cfg: FilterConfig
) -> StageVerdict:
    """Every frame holds 1-5 people and mean box coverage reaches the floor.

    Per-frame coverage is the sum of person box areas capped at 1.0;
    overlapping boxes are summed, not unioned.
    """
    if len(frames) != EXISTENCE_FRAMES_REQUIRED:
        raise ValueError(
            f"existence filter requires exactly {EXISTENCE_FRAMES_REQUIRED} frames, "
            f"got {len(frames)}"
        )
    for i, frame in enumerate(frames):
        count = len(frame.persons)
        if not (cfg.min_humans <= count <= cfg.max_humans):
            return StageVerdict(
                "existence", False, None,
                f"person count out of range in frame {i}: {count}",
            )
    coverage = float(
        sum(min(1.0, sum(p.bbox.area for p in frame.persons)) for frame in frames)
    ) / len(frames)
    if coverage < cfg.min_coverage:
        return StageVerdict(
            "existence", False, coverage,
            f"coverage {coverage:.4f} < {cfg.min_coverage:g}",
        )
    return StageVerdict("existence", True, coverage, "ok")


def human_action_filter(
    frames: Sequence[PoseFrame], cfg: FilterConfig
) -> list[StageVerdict]:
    """Motion gate then camera-motion gate, as two auditable sub-verdicts.

    (a) action_motion: at least one tracklet spanning >= 2 frames must keep
        its mean keypoint L1 displacement above the threshold on every
        adjacent frame pair (all tracklets, with ``require_all_tracklets``).
    (b) action_affine: the pooled best-affine residual must exceed its
        threshold; low residual means the apparent motion is a global affine
        transform, i.e. camera movement or a slideshow, not a human acting.

    Stops after (a) when it fails. An undecidable residual (too few tracked
    keypoints) fails (b).
    """
    if len(frames) < 2:
        raise ValueError(f"action filter requires at least 2 frames, got {len(frames)}")

    tracklets = build_tracklets(frames, cfg.iou_min)
    gates: list[float] = []
    n_long = 0
    for t in tracklets:
        if len(t) < 2:
            continue
        n_long += 1
        dists = keypoint_motion_l1(t, cfg.conf_min)
        if dists and all(d is not None for d in dists):
            gates.append(min(dists))  # worst pair decides the tracklet

    qualifying = [g for g in gates if g > cfg.l1_threshold]
    if cfg.require_all_tracklets:
        motion_pass = n_long > 0 and len(qualifying) == n_long == len(gates)
    else:
        motion_pass = bool(qualifying)
    motion_score = max(qualifying) if qualifying else (max(gates) if gates else 0.0)
    if motion_pass:
        motion = StageVerdict("action_motion", True, motion_score, "ok")
    else:
        reason = (
            "no tracklet with measurable motion"
            if not gates
            else f"max per-tracklet L1 {motion_score:.4f} <= {cfg.l1_threshold:g}"
        )
        motion = StageVerdict("action_motion", False, motion_score, reason)
    verdicts = [motion]
    if not motion_pass:
        return verdicts

    r = clip_affine_residual(frames, tracklets, cfg.conf_min, scope=cfg.affine_scope)
    if r is None:
        verdicts.append(
            StageVerdict("action_affine", False, None, "insufficient tracked keypoints")
        )
    elif r > cfg.affine_residual_threshold:
        verdicts.append(StageVerdict("action_affine", True, r, "ok"))
    else:
        verdicts.append(
            StageVerdict(
                "action_affine", False, r,
                f"affine residual {r:.3g} <= {cfg.affine_residual_threshold:g} "
                "(camera-like motion)",
            )
        )
    return verdicts


def run_cascade(
    clip: ClipRecord,
    cfg: FilterConfig,
    verb_lexicon: frozenset[str],
) -> tuple[list[StageVerdict], bool]:
    """Run all stages in order, short-circuiting on the first failure.

    Returns every verdict attempted plus the final accept/reject flag. Input
    errors raised by a stage (e.g. a wrong existence frame count) become a
    failed verdict with reason "invalid input", never an exception.
    """
    verdicts = [metadata_filter(clip.meta, verb_lexicon, cfg)]
    if verdicts[-1].passed:
        try:
            verdicts.append(human_existence_filter(clip.existence_frames, cfg))
        except ValueError as exc:
            verdicts.append(StageVerdict("existence", False, None, f"invalid input: {exc}"))
    if verdicts[-1].passed:
        try:
            verdicts.extend(human_action_filter(clip.action_frames, cfg))
        except ValueError as exc:
            verdicts.append(
                StageVerdict("action_motion", False, None, f"invalid input: {exc}")
            )
    final = all(v.passed for v in verdicts)
    return verdicts, final
