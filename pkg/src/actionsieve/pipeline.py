"""Batch orchestration: JSONL in, per-clip decisions and yield stats out.

Clips are independent, so any worker count is allowed; output order always
equals input order and reruns are byte-identical, which is what makes a
curated dataset reproducible. Malformed lines become rejected decision
records counted in their own stats bucket instead of aborting the batch.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np

from .filters import FilterConfig, load_verb_lexicon, run_cascade
from .records import STAGES, RecordParseError, SchemaError, StageVerdict, parse_clip_record


@dataclass(frozen=True)
class DecisionRecord:
    """One clip's cascade outcome: verdicts, final flag, per-stage scores."""

    video_id: str
    clip_id: str
    verdicts: tuple[StageVerdict, ...]
    final: bool
    scores: dict[str, float]
    error: str | None = None  # set only for unparseable input lines

    def to_json_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "video_id": self.video_id,
            "clip_id": self.clip_id,
            "final": self.final,
            "verdicts": [
                {
                    "stage": v.stage,
                    "passed": v.passed,
                    "score": v.score,
                    "reason": v.reason,
                }
                for v in self.verdicts
            ],
            "scores": self.scores,
        }
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass
class PipelineStats:
    """Counts describing the cascade's attrition over one input batch."""

    input_count: int = 0
    parse_errors: int = 0
    stage_attempted: dict[str, int] = field(
        default_factory=lambda: {s: 0 for s in STAGES}
    )
    stage_passed: dict[str, int] = field(default_factory=lambda: {s: 0 for s in STAGES})
    stage_failed: dict[str, int] = field(default_factory=lambda: {s: 0 for s in STAGES})
    undecidable: int = 0
    final_pass: int = 0

    @property
    def final_yield(self) -> float:
        if self.input_count == 0:
            return 0.0
        return self.final_pass / self.input_count

    def add(self, record: DecisionRecord) -> None:
        self.input_count += 1
        if record.error is not None:
            self.parse_errors += 1
            return
        for v in record.verdicts:
            self.stage_attempted[v.stage] += 1
            if v.passed:
                self.stage_passed[v.stage] += 1
            elif v.stage == "action_affine" and v.score is None:
                self.undecidable += 1
            else:
                self.stage_failed[v.stage] += 1
        if record.final:
            self.final_pass += 1

    def to_dict(self) -> dict[str, Any]:
        return {
            "input_count": self.input_count,
            "parse_errors": self.parse_errors,
            "stage_attempted": dict(self.stage_attempted),
            "stage_passed": dict(self.stage_passed),
            "stage_failed": dict(self.stage_failed),
            "undecidable": self.undecidable,
            "final_pass": self.final_pass,
            "final_yield": self.final_yield,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "PipelineStats":
        return cls(
            input_count=d["input_count"],
            parse_errors=d["parse_errors"],
            stage_attempted=dict(d["stage_attempted"]),
            stage_passed=dict(d["stage_passed"]),
            stage_failed=dict(d["stage_failed"]),
            undecidable=d["undecidable"],
            final_pass=d["final_pass"],
        )


def _decide_line(
    numbered_line: tuple[int, bytes | str],
    cfg: FilterConfig,
    lexicon: frozenset[str],
) -> DecisionRecord:
    lineno, line = numbered_line
    try:
        clip = parse_clip_record(line, line_number=lineno)
    except (RecordParseError, SchemaError) as exc:
        video_id = clip_id = ""
        if isinstance(exc, SchemaError):
            try:
                raw = json.loads(line if isinstance(line, str) else line.decode("utf-8"))
                video_id = str(raw.get("video_id", ""))
                clip_id = str(raw.get("clip_id", ""))
            except Exception:
                pass
        return DecisionRecord(
            video_id=video_id,
            clip_id=clip_id,
            verdicts=(),
            final=False,
            scores={},
            error=f"parse error: {exc}",
        )
    verdicts, final = run_cascade(clip, cfg, lexicon)
    scores = {v.stage: v.score for v in verdicts if v.score is not None}
    return DecisionRecord(
        video_id=clip.meta.video_id,
        clip_id=clip.meta.clip_id,
        verdicts=tuple(verdicts),
        final=final,
        scores=scores,
    )


def run_pipeline(
    lines: Iterable[bytes | str],
    cfg: FilterConfig | None = None,
    verb_lexicon: frozenset[str] | None = None,
    workers: int = 1,
) -> tuple[list[DecisionRecord], PipelineStats]:
    """Run the cascade over a JSONL line stream.

    Returns one DecisionRecord per non-blank input line, in input order
    regardless of ``workers``, plus stats over the whole batch. Clips are
    pure-function work items, so thread workers cannot change any output.
    """
    cfg = cfg or FilterConfig()
    lexicon = verb_lexicon if verb_lexicon is not None else load_verb_lexicon()
    numbered = [
        (i, line)
        for i, line in enumerate(lines, start=1)
        if (line.strip() if isinstance(line, str) else line.strip())
    ]

    if workers <= 1:
        decisions = [_decide_line(item, cfg, lexicon) for item in numbered]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            decisions = list(
                pool.map(lambda item: _decide_line(item, cfg, lexicon), numbered)
            )

    stats = PipelineStats()
    for rec in decisions:
        stats.add(rec)
    return decisions, stats


def write_decisions(path, decisions: Sequence[DecisionRecord]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for rec in decisions:
            f.write(json.dumps(rec.to_json_dict(), separators=(",", ":")))
            f.write("\n")


def emit_stats_report(stats: PipelineStats, format: str = "text") -> str:
    """Render stats deterministically as a text table or JSON."""
    if format == "json":
        return json.dumps(stats.to_dict(), indent=2)
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    lines = [
        f"inputs        {stats.input_count:>10d}",
        f"parse errors  {stats.parse_errors:>10d}",
        "",
        f"{'stage':<16}{'attempted':>10}{'passed':>10}{'failed':>10}",
    ]
    for s in STAGES:
        lines.append(
            f"{s:<16}{stats.stage_attempted[s]:>10d}"
            f"{stats.stage_passed[s]:>10d}{stats.stage_failed[s]:>10d}"
        )
    lines += [
        "",
        f"undecidable   {stats.undecidable:>10d}",
        f"final pass    {stats.final_pass:>10d}",
        f"final yield   {stats.final_yield * 100:>10.4f}%",
    ]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SceneBoundaryReport:
    """Frame indices where a new scene starts, and how they were obtained."""

    boundaries: tuple[int, ...]
    method: str  # "ingested" or "histogram"

    @classmethod
    def from_ingested(cls, boundaries: Iterable[int]) -> "SceneBoundaryReport":
        bounds = tuple(boundaries)
        if any(a >= b for a, b in zip(bounds, bounds[1:])):
            raise ValueError("boundaries must be strictly increasing")
        return cls(boundaries=bounds, method="ingested")


def detect_scene_boundaries(
    frame_histograms: Sequence, diff_threshold: float = 0.3
) -> SceneBoundaryReport:
    """Flag scene cuts from per-frame color histograms.

    Each histogram is (channels, bins) with every channel L1-normalized. The
    change score between consecutive frames is the per-channel total
    variation distance (half the absolute bin difference) averaged over
    channels, so it lives in [0, 1] regardless of bin count; index i is a
    boundary when score(i-1, i) exceeds ``diff_threshold``.
    """
    if len(frame_histograms) < 1:
        raise ValueError("need at least one histogram")
    hists = [np.asarray(h, dtype=float) for h in frame_histograms]
    shape = hists[0].shape
    for i, h in enumerate(hists):
        if h.ndim != 2:
            raise ValueError(f"histogram {i}: expected (channels, bins), got shape {h.shape}")
        if h.shape != shape:
            raise ValueError(f"histogram {i}: shape {h.shape} != {shape}")
        sums = h.sum(axis=1)
        if not np.allclose(sums, 1.0, atol=1e-6):
            raise ValueError(f"histogram {i}: channels not L1-normalized (sums {sums})")
    boundaries = []
    for i in range(1, len(hists)):
        score = float(np.mean(0.5 * np.sum(np.abs(hists[i] - hists[i - 1]), axis=1)))
        if score > diff_threshold:
            boundaries.append(i)
    return SceneBoundaryReport(boundaries=tuple(boundaries), method="histogram")
