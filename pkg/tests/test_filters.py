import dataclasses

import numpy as np
import pytest

from actionsieve.filters import (
    FilterConfig,
    caption_has_verb,
    human_action_filter,
    human_existence_filter,
    load_verb_lexicon,
    metadata_filter,
    run_cascade,
)
from actionsieve.records import ClipMeta, ClipRecord, PoseFrame

from synth import (
    PLANT_EXPECTATIONS,
    articulated_frames,
    camera_frames,
    existence_frames,
    make_meta,
    make_person,
    no_verb_captions,
    planted_corpus,
    static_frames,
)


def meta_with(caption="a man running on the beach", duration=10.0, size=(1280, 720), tags=None):
    return ClipMeta(
        video_id="v", clip_id="c", width=size[0], height=size[1],
        duration_s=duration, caption=caption, caption_pos_tags=tags,
    )


class TestFilterConfig:
    def test_defaults_hold_published_operating_point(self):
        cfg = FilterConfig()
        assert cfg.min_clip_s == 5.0 and cfg.max_clip_s == 20.0
        assert cfg.min_humans == 1 and cfg.max_humans == 5
        assert cfg.min_coverage == 0.10
        assert cfg.l1_threshold == 0.085
        assert cfg.affine_residual_threshold == 0.0016

    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            FilterConfig(min_clip_s=20, max_clip_s=5)
        with pytest.raises(ValueError):
            FilterConfig(min_humans=6, max_humans=5)
        with pytest.raises(ValueError):
            FilterConfig(l1_threshold=-0.1)
        with pytest.raises(ValueError):
            FilterConfig(affine_scope="sideways")

    def test_frozen(self):
        with pytest.raises(dataclasses.FrozenInstanceError):
            FilterConfig().l1_threshold = 0.2  # type: ignore[misc]


class TestMetadataFilter:
    def test_verb_caption_passes(self, cfg, lexicon):
        v = metadata_filter(meta_with("a man running on the beach"), lexicon, cfg)
        assert v.passed and v.stage == "metadata"

    def test_no_verb_fails(self, cfg, lexicon):
        v = metadata_filter(meta_with("blue sky and mountains"), lexicon, cfg)
        assert not v.passed
        assert "verb" in v.reason

    def test_short_duration_fails(self, cfg, lexicon):
        v = metadata_filter(meta_with(duration=3.0), lexicon, cfg)
        assert not v.passed
        assert "duration" in v.reason

    def test_duration_bounds_inclusive(self, cfg, lexicon):
        assert metadata_filter(meta_with(duration=5.0), lexicon, cfg).passed
        assert metadata_filter(meta_with(duration=20.0), lexicon, cfg).passed
        assert not metadata_filter(meta_with(duration=20.01), lexicon, cfg).passed

    def test_low_resolution_fails(self, cfg, lexicon):
        v = metadata_filter(meta_with(size=(640, 320)), lexicon, cfg)
        assert not v.passed
        assert "short side" in v.reason

    def test_pos_tags_take_precedence(self, cfg, lexicon):
        # caption words are all out-of-lexicon, but the tags say verb
        tags = (("skoffling", "VERB"), ("brzz", "NOUN"))
        assert metadata_filter(meta_with("skoffling brzz", tags=tags), lexicon, cfg).passed
        # tags present and verbless beats a verby-looking caption
        tags = (("running", "NOUN"),)
        assert not metadata_filter(meta_with("running", tags=tags), lexicon, cfg).passed

    def test_penn_tags_accepted(self, cfg, lexicon):
        tags = (("runs", "VBZ"),)
        assert metadata_filter(meta_with("xqzt", tags=tags), lexicon, cfg).passed

    def test_lexicon_is_case_insensitive_and_tokenizes(self, lexicon):
        assert caption_has_verb(meta_with("The Dog RUNS, quickly!"), lexicon)
        assert not caption_has_verb(meta_with("sky, mountains; clouds."), lexicon)


def frame16(rng, n_persons, box_hw=(0.30, 0.22), counts=None):
    return existence_frames(rng, n_persons, duration=10.0, box_hw=box_hw, counts=counts)


class TestHumanExistenceFilter:
    def test_two_persons_good_coverage(self, cfg, rng):
        v = human_existence_filter(frame16(rng, 2), cfg)
        assert v.passed and v.stage == "existence"
        assert v.score == pytest.approx(2 * 0.30 * 0.22, abs=1e-9)

    def test_empty_frame_fails(self, cfg, rng):
        counts = [2] * 16
        counts[7] = 0
        v = human_existence_filter(frame16(rng, 2, counts=counts), cfg)
        assert not v.passed
        assert "person count" in v.reason

    def test_six_persons_fails(self, cfg, rng):
        counts = [2] * 16
        counts[3] = 6
        v = human_existence_filter(frame16(rng, 2, counts=counts), cfg)
        assert not v.passed

    def test_boundary_counts(self, cfg, rng):
        ok1 = human_existence_filter(frame16(rng, 1, box_hw=(0.5, 0.4)), cfg)
        assert ok1.passed
        ok5 = human_existence_filter(frame16(rng, 5), cfg)
        assert ok5.passed

    def test_low_coverage_fails(self, cfg, rng):
        v = human_existence_filter(frame16(rng, 2, box_hw=(0.10, 0.08)), cfg)
        assert not v.passed
        assert "coverage" in v.reason

    def test_wrong_frame_count_is_input_error(self, cfg, rng):
        with pytest.raises(ValueError, match="16"):
            human_existence_filter(frame16(rng, 2)[:10], cfg)

    def test_coverage_capped_per_frame(self, cfg, rng):
        # one huge box per frame: capped at 1.0, not summed beyond
        pts = rng.uniform(0.2, 0.8, size=(17, 2))
        frames = [
            PoseFrame(
                frame_index=i,
                timestamp_s=float(i),
                persons=(
                    make_person(pts, (0.0, 0.0, 1.0, 1.0)),
                    make_person(pts, (0.0, 0.0, 1.0, 1.0)),
                ),
            )
            for i in range(16)
        ]
        v = human_existence_filter(frames, cfg)
        assert v.passed
        assert v.score == pytest.approx(1.0)


class TestHumanActionFilter:
    def test_static_fails_at_motion(self, cfg, rng):
        verdicts = human_action_filter(static_frames(rng, 2, 6), cfg)
        assert len(verdicts) == 1
        v = verdicts[0]
        assert v.stage == "action_motion" and not v.passed
        assert v.score is not None and v.score < 0.01

    def test_camera_pan_passes_motion_fails_affine(self, rng):
        # exact per-second affine with translation 0.1 per axis: large L1,
        # zero residual; a single large person so association holds
        cfg = FilterConfig()
        base = rng.uniform(0.15, 0.45, size=(17, 2))
        base[0] = [0.15, 0.15]
        base[1] = [0.45, 0.45]  # pin the spread so the box stays trackable
        frames = []
        pts = base.copy()
        offs = np.zeros(2)
        for t in range(4):
            if t:
                offs = offs + 0.1
                pts = base + offs
            box = (pts[:, 0].min() - 0.05, pts[:, 1].min() - 0.05,
                   pts[:, 0].max() + 0.05, pts[:, 1].max() + 0.05)
            frames.append(
                PoseFrame(frame_index=t, timestamp_s=float(t),
                          persons=(make_person(pts, box),))
            )
        verdicts = human_action_filter(frames, cfg)
        assert len(verdicts) == 2
        motion, affine = verdicts
        assert motion.stage == "action_motion" and motion.passed
        assert motion.score == pytest.approx(0.2, abs=1e-9)
        assert affine.stage == "action_affine" and not affine.passed
        assert affine.score is not None and affine.score <= 1e-10

    def test_walking_motion_passes_both(self, cfg):
        rng = np.random.default_rng(11)
        ok = 0
        trials = 300
        for _ in range(trials):
            frames = articulated_frames(
                rng, int(rng.integers(2, 6)), int(rng.integers(5, 13))
            )
            verdicts = human_action_filter(frames, cfg)
            ok += all(v.passed for v in verdicts) and len(verdicts) == 2
        assert ok / trials >= 0.95

    def test_too_few_frames_is_input_error(self, cfg, rng):
        with pytest.raises(ValueError, match="at least 2"):
            human_action_filter(static_frames(rng, 1, 1), cfg)

    def test_undecidable_residual_rejects(self, cfg, rng):
        # confidences below the gate: tracklets link (boxes overlap) but no
        # keypoint is trusted, so motion has no evidence
        frames = static_frames(rng, 1, 4)
        frames = [
            PoseFrame(
                frame_index=f.frame_index,
                timestamp_s=f.timestamp_s,
                persons=tuple(
                    make_person(
                        np.array([[k.h, k.w] for k in p.keypoints]),
                        (p.bbox.y1, p.bbox.x1, p.bbox.y2, p.bbox.x2),
                        conf=0.05,
                    )
                    for p in f.persons
                ),
            )
            for f in frames
        ]
        verdicts = human_action_filter(frames, cfg)
        assert not verdicts[-1].passed

    def test_undecidable_sentinel_contract(self, cfg, rng, monkeypatch):
        # the affine stage must turn a None residual into a reject with the
        # documented reason, whatever produced it
        import actionsieve.filters as filters_mod

        monkeypatch.setattr(filters_mod, "clip_affine_residual", lambda *a, **k: None)
        verdicts = filters_mod.human_action_filter(articulated_frames(rng, 2, 5), cfg)
        assert verdicts[-1].stage == "action_affine"
        assert not verdicts[-1].passed
        assert verdicts[-1].score is None
        assert verdicts[-1].reason == "insufficient tracked keypoints"

    def test_require_all_tracklets_flag(self, rng):
        # one mover plus one statue: default accepts, strict mode rejects
        mover = articulated_frames(rng, 1, 5)
        statue = static_frames(rng, 1, 5)
        merged = []
        for fm, fs in zip(mover, statue):
            statue_person = fs.persons[0]
            shifted = make_person(
                np.array([[k.h, k.w + 0.45] for k in statue_person.keypoints]),
                (
                    statue_person.bbox.y1,
                    statue_person.bbox.x1 + 0.45,
                    statue_person.bbox.y2,
                    statue_person.bbox.x2 + 0.45,
                ),
            )
            merged.append(
                PoseFrame(
                    frame_index=fm.frame_index,
                    timestamp_s=fm.timestamp_s,
                    persons=fm.persons + (shifted,),
                )
            )
        default_verdicts = human_action_filter(merged, FilterConfig())
        assert default_verdicts[0].passed
        strict_verdicts = human_action_filter(
            merged, FilterConfig(require_all_tracklets=True)
        )
        assert not strict_verdicts[0].passed

    def test_motion_threshold_monotonicity(self, rng):
        frames = articulated_frames(rng, 2, 6)
        low = human_action_filter(frames, FilterConfig(l1_threshold=0.085))
        high = human_action_filter(frames, FilterConfig(l1_threshold=5.0))
        if not low[0].passed:
            assert not high[0].passed

    def test_affine_threshold_monotonicity(self, rng):
        frames = articulated_frames(rng, 2, 6)
        low = human_action_filter(frames, FilterConfig(affine_residual_threshold=0.0016))
        high = human_action_filter(frames, FilterConfig(affine_residual_threshold=1e6))
        if len(low) == 2 and not low[1].passed:
            assert len(high) < 2 or not high[1].passed


def record_for(action, existence, meta):
    return ClipRecord(meta=meta, existence_frames=tuple(existence), action_frames=tuple(action))


class TestRunCascade:
    def test_metadata_short_circuit(self, cfg, lexicon, rng):
        rec = record_for(
            articulated_frames(rng, 2, 6),
            existence_frames(rng, 2, 10.0),
            meta_with(caption="blue sky and mountains"),
        )
        verdicts, final = run_cascade(rec, cfg, lexicon)
        assert len(verdicts) == 1 and not final
        assert verdicts[0].stage == "metadata"

    def test_full_pass_has_four_verdicts(self, cfg, lexicon):
        rng = np.random.default_rng(5)
        rec = record_for(
            articulated_frames(rng, 3, 8),
            existence_frames(rng, 3, 8.0),
            meta_with(duration=8.0),
        )
        verdicts, final = run_cascade(rec, cfg, lexicon)
        assert final
        assert [v.stage for v in verdicts] == [
            "metadata", "existence", "action_motion", "action_affine",
        ]

    def test_invalid_input_becomes_failed_verdict(self, cfg, lexicon, rng):
        rec = record_for(
            articulated_frames(rng, 2, 6)[:1],  # < 2 action frames
            existence_frames(rng, 2, 10.0),
            meta_with(),
        )
        verdicts, final = run_cascade(rec, cfg, lexicon)
        assert not final
        assert "invalid input" in verdicts[-1].reason

    def test_missing_existence_frames_fail_gracefully(self, cfg, lexicon, rng):
        rec = record_for(articulated_frames(rng, 2, 6), (), meta_with())
        verdicts, final = run_cascade(rec, cfg, lexicon)
        assert not final
        assert verdicts[-1].stage == "existence"
        assert "invalid input" in verdicts[-1].reason

    def test_deterministic(self, cfg, lexicon):
        rng = np.random.default_rng(3)
        rec = record_for(
            articulated_frames(rng, 2, 6),
            existence_frames(rng, 2, 6.0),
            meta_with(duration=6.0),
        )
        a = run_cascade(rec, cfg, lexicon)
        b = run_cascade(rec, cfg, lexicon)
        assert a == b

    def test_planted_corpus_accuracy_and_stages(self, cfg, lexicon):
        corpus = planted_corpus(seed=424242, n=300)
        correct = 0
        for rec, mode in corpus:
            want_final, want_stage = PLANT_EXPECTATIONS[mode]
            verdicts, final = run_cascade(rec, cfg, lexicon)
            correct += final == want_final
            if not want_final and final == want_final:
                assert verdicts[-1].stage == want_stage, (mode, verdicts[-1])
        assert correct / len(corpus) >= 0.95
