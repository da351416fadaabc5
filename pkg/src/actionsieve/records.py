"""Core record types and the detection JSONL wire format.

One JSONL line describes one video clip: its metadata, 16 uniformly sampled
frames used by the human-existence check, and 1 fps frames used by the
motion checks. All coordinates are stored as fractions of the frame size
(height and width respectively), so every threshold downstream is
resolution-independent. Keypoints are ordered (h, w, confidence) with h
first; bounding boxes keep the conventional (x1, y1, x2, y2) corner order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterable

COCO17_KEYPOINT_NAMES = (
    "nose",
    "left_eye",
    "right_eye",
    "left_ear",
    "right_ear",
    "left_shoulder",
    "right_shoulder",
    "left_elbow",
    "right_elbow",
    "left_wrist",
    "right_wrist",
    "left_hip",
    "right_hip",
    "left_knee",
    "right_knee",
    "left_ankle",
    "right_ankle",
)

N_KEYPOINTS = len(COCO17_KEYPOINT_NAMES)

EXISTENCE_FRAME_COUNT = 16

STAGES = ("metadata", "existence", "action_motion", "action_affine")


class RecordParseError(ValueError):
    """A JSONL line is not valid JSON."""


class SchemaError(ValueError):
    """A decoded record violates the detection schema; the message names the field."""


@dataclass(frozen=True)
class Keypoint:
    """One body joint in normalized coordinates: h, w in [0, 1], confidence in [0, 1]."""

    h: float
    w: float
    confidence: float


@dataclass(frozen=True)
class BoundingBox:
    """Axis-aligned person box with normalized corners, x1 <= x2 and y1 <= y2."""

    x1: float
    y1: float
    x2: float
    y2: float

    @property
    def area(self) -> float:
        return (self.x2 - self.x1) * (self.y2 - self.y1)


@dataclass(frozen=True)
class PersonDetection:
    bbox: BoundingBox
    keypoints: tuple[Keypoint, ...]  # always 17, COCO order


@dataclass(frozen=True)
class PoseFrame:
    frame_index: int
    timestamp_s: float
    persons: tuple[PersonDetection, ...]


@dataclass(frozen=True)
class ClipMeta:
    video_id: str
    clip_id: str
    width: int
    height: int
    duration_s: float
    caption: str
    caption_pos_tags: tuple[tuple[str, str], ...] | None = None


@dataclass(frozen=True)
class ClipRecord:
    """A clip's metadata plus its sampled frames; the pipeline's unit of work.

    ``existence_frames`` is either empty (not provided) or exactly 16 frames;
    ``action_frames`` are sampled at roughly one-second spacing.
    """

    meta: ClipMeta
    existence_frames: tuple[PoseFrame, ...]
    action_frames: tuple[PoseFrame, ...]


@dataclass(frozen=True)
class Tracklet:
    """One person's detections linked across consecutive sampled frames.

    Entries are (frame_index, detection) pairs from consecutive frames of the
    sampled sequence; a missed association terminates the tracklet, so there
    are never gaps.
    """

    tracklet_id: int
    entries: tuple[tuple[int, PersonDetection], ...]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class StageVerdict:
    """Audit record of one cascade stage: did the clip pass, and why."""

    stage: str  # one of STAGES
    passed: bool
    score: float | None
    reason: str


def _clamp01(v: float) -> float:
    return 0.0 if v < 0.0 else 1.0 if v > 1.0 else v


def _fail(path: str, msg: str) -> SchemaError:
    return SchemaError(f"{path}: {msg}")


def _get(obj: dict, path: str, key: str) -> Any:
    if not isinstance(obj, dict):
        raise _fail(path, f"expected object, got {type(obj).__name__}")
    if key not in obj:
        raise _fail(f"{path}.{key}" if path else key, "missing field")
    return obj[key]


def _as_finite_float(v: Any, path: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise _fail(path, f"expected number, got {type(v).__name__}")
    f = float(v)
    if f != f or f in (float("inf"), float("-inf")):
        raise _fail(path, "not finite")
    return f


def _as_int(v: Any, path: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise _fail(path, f"expected integer, got {type(v).__name__}")
    return v


def _as_str(v: Any, path: str) -> str:
    if not isinstance(v, str):
        raise _fail(path, f"expected string, got {type(v).__name__}")
    return v


def _parse_keypoint(v: Any, path: str) -> Keypoint:
    if not isinstance(v, list) or len(v) != 3:
        raise _fail(path, "expected [h, w, confidence]")
    h = _clamp01(_as_finite_float(v[0], f"{path}[0]"))
    w = _clamp01(_as_finite_float(v[1], f"{path}[1]"))
    conf = _clamp01(_as_finite_float(v[2], f"{path}[2]"))
    return Keypoint(h=h, w=w, confidence=conf)


def _parse_person(v: Any, path: str) -> PersonDetection:
    box = _get(v, path, "bbox")
    if not isinstance(box, list) or len(box) != 4:
        raise _fail(f"{path}.bbox", "expected [x1, y1, x2, y2]")
    x1, y1, x2, y2 = (
        _clamp01(_as_finite_float(c, f"{path}.bbox[{i}]")) for i, c in enumerate(box)
    )
    if x1 > x2 or y1 > y2:
        raise _fail(f"{path}.bbox", f"corners out of order: {box}")
    kps = _get(v, path, "keypoints")
    if not isinstance(kps, list):
        raise _fail(f"{path}.keypoints", "expected array")
    if len(kps) != N_KEYPOINTS:
        raise _fail(f"{path}.keypoints", f"length {len(kps)} != {N_KEYPOINTS}")
    keypoints = tuple(
        _parse_keypoint(k, f"{path}.keypoints[{i}]") for i, k in enumerate(kps)
    )
    return PersonDetection(bbox=BoundingBox(x1, y1, x2, y2), keypoints=keypoints)


def _parse_frames(v: Any, path: str) -> tuple[PoseFrame, ...]:
    if not isinstance(v, list):
        raise _fail(path, "expected array")
    frames = []
    prev_ts = None
    for i, fv in enumerate(v):
        fpath = f"{path}[{i}]"
        idx = _as_int(_get(fv, fpath, "frame_index"), f"{fpath}.frame_index")
        if idx < 0:
            raise _fail(f"{fpath}.frame_index", "negative")
        ts = _as_finite_float(_get(fv, fpath, "timestamp_s"), f"{fpath}.timestamp_s")
        if ts < 0:
            raise _fail(f"{fpath}.timestamp_s", "negative")
        if prev_ts is not None and ts <= prev_ts:
            raise _fail(f"{fpath}.timestamp_s", f"not strictly increasing ({prev_ts} then {ts})")
        prev_ts = ts
        persons_v = _get(fv, fpath, "persons")
        if not isinstance(persons_v, list):
            raise _fail(f"{fpath}.persons", "expected array")
        persons = tuple(
            _parse_person(p, f"{fpath}.persons[{j}]") for j, p in enumerate(persons_v)
        )
        frames.append(PoseFrame(frame_index=idx, timestamp_s=ts, persons=persons))
    return tuple(frames)


def parse_clip_record(line: bytes | str, line_number: int | None = None) -> ClipRecord:
    """Parse and validate one detection JSONL line into a ``ClipRecord``.

    Coordinates slightly outside [0, 1] are clamped; structural violations
    (wrong keypoint count, missing fields, unordered timestamps) raise
    ``SchemaError`` naming the offending field. Invalid JSON raises
    ``RecordParseError`` carrying the line number when one was given.
    """
    if isinstance(line, bytes):
        line = line.decode("utf-8")
    where = f"line {line_number}: " if line_number is not None else ""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise RecordParseError(f"{where}invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise _fail("", f"{where}expected a JSON object")

    video_id = _as_str(_get(obj, "", "video_id"), "video_id")
    clip_id = _as_str(_get(obj, "", "clip_id"), "clip_id")
    meta_v = _get(obj, "", "meta")
    width = _as_int(_get(meta_v, "meta", "width"), "meta.width")
    height = _as_int(_get(meta_v, "meta", "height"), "meta.height")
    if width <= 0 or height <= 0:
        raise _fail("meta.width/height", f"must be positive, got {width}x{height}")
    duration = _as_finite_float(_get(meta_v, "meta", "duration_s"), "meta.duration_s")
    if duration <= 0:
        raise _fail("meta.duration_s", f"must be positive, got {duration}")
    caption = _as_str(_get(meta_v, "meta", "caption"), "meta.caption")
    tags_v = meta_v.get("caption_pos_tags")
    tags: tuple[tuple[str, str], ...] | None = None
    if tags_v is not None:
        if not isinstance(tags_v, list):
            raise _fail("meta.caption_pos_tags", "expected array of [token, tag] pairs")
        pairs = []
        for i, t in enumerate(tags_v):
            if not isinstance(t, list) or len(t) != 2:
                raise _fail(f"meta.caption_pos_tags[{i}]", "expected [token, tag]")
            pairs.append(
                (
                    _as_str(t[0], f"meta.caption_pos_tags[{i}][0]"),
                    _as_str(t[1], f"meta.caption_pos_tags[{i}][1]"),
                )
            )
        tags = tuple(pairs)

    existence = _parse_frames(_get(obj, "", "existence_frames"), "existence_frames")
    if len(existence) not in (0, EXISTENCE_FRAME_COUNT):
        raise _fail(
            "existence_frames",
            f"length {len(existence)} != {EXISTENCE_FRAME_COUNT}",
        )
    action = _parse_frames(_get(obj, "", "action_frames"), "action_frames")
    for i, (fa, fb) in enumerate(zip(action, action[1:]), start=1):
        dt = fb.timestamp_s - fa.timestamp_s
        if not (0.5 < dt < 1.5):
            raise _fail(
                f"action_frames[{i}].timestamp_s",
                f"spacing {dt:g}s is not ~1 s",
            )

    meta = ClipMeta(
        video_id=video_id,
        clip_id=clip_id,
        width=width,
        height=height,
        duration_s=duration,
        caption=caption,
        caption_pos_tags=tags,
    )
    return ClipRecord(meta=meta, existence_frames=existence, action_frames=action)


def _fmt_num(v: float | int) -> str:
    # 9 significant digits, %g style; integers stay integers
    if isinstance(v, int) and not isinstance(v, bool):
        return str(v)
    return format(float(v), ".9g")


def _fmt_str(s: str) -> str:
    return json.dumps(s, ensure_ascii=False)


def _fmt_person(p: PersonDetection) -> str:
    box = ",".join(_fmt_num(c) for c in (p.bbox.x1, p.bbox.y1, p.bbox.x2, p.bbox.y2))
    kps = ",".join(
        f"[{_fmt_num(k.h)},{_fmt_num(k.w)},{_fmt_num(k.confidence)}]" for k in p.keypoints
    )
    return f'{{"bbox":[{box}],"keypoints":[{kps}]}}'


def _fmt_frame(f: PoseFrame) -> str:
    persons = ",".join(_fmt_person(p) for p in f.persons)
    return (
        f'{{"frame_index":{f.frame_index},'
        f'"timestamp_s":{_fmt_num(f.timestamp_s)},'
        f'"persons":[{persons}]}}'
    )


def canonical_serialize(record: ClipRecord) -> bytes:
    """Serialize a record to its canonical JSONL form (no trailing newline).

    Field order is fixed and floats are rendered with 9 significant digits,
    so two equal records always serialize to identical bytes.
    """
    m = record.meta
    parts = [
        '{"video_id":', _fmt_str(m.video_id),
        ',"clip_id":', _fmt_str(m.clip_id),
        ',"meta":{"width":', str(m.width),
        ',"height":', str(m.height),
        ',"duration_s":', _fmt_num(m.duration_s),
        ',"caption":', _fmt_str(m.caption),
    ]
    if m.caption_pos_tags is not None:
        tags = ",".join(
            f"[{_fmt_str(tok)},{_fmt_str(tag)}]" for tok, tag in m.caption_pos_tags
        )
        parts += [',"caption_pos_tags":[', tags, "]"]
    parts += [
        '},"existence_frames":[',
        ",".join(_fmt_frame(f) for f in record.existence_frames),
        '],"action_frames":[',
        ",".join(_fmt_frame(f) for f in record.action_frames),
        "]}",
    ]
    return "".join(parts).encode("utf-8")


def read_clip_records(lines: Iterable[bytes | str]) -> Iterable[ClipRecord]:
    """Parse an iterable of JSONL lines, skipping blank lines."""
    for i, line in enumerate(lines, start=1):
        stripped = line.strip() if isinstance(line, str) else line.strip()
        if not stripped:
            continue
        yield parse_clip_record(stripped, line_number=i)
