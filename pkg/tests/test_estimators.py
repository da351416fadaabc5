import json

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from actionsieve.estimators import ActionClipSieve, AffineMotionEstimator
from actionsieve.filters import FilterConfig, load_verb_lexicon, run_cascade
from actionsieve.motion import fit_affine_arrays

from synth import planted_corpus


class TestAffineMotionEstimator:
    def test_fit_predict_roundtrip(self, rng):
        src = rng.uniform(0, 1, size=(17, 2))
        A = np.array([[1.1, 0.05], [-0.03, 0.95]])
        t = np.array([0.02, -0.04])
        dst = src @ A.T + t
        est = AffineMotionEstimator().fit(src, dst)
        assert np.allclose(est.matrix_, A, atol=1e-9)
        assert np.allclose(est.translation_, t, atol=1e-9)
        assert est.residual_ <= 1e-12
        assert np.allclose(est.predict(src), dst, atol=1e-9)

    def test_agrees_with_functional_fit(self, rng):
        src = rng.uniform(0, 1, size=(20, 2))
        dst = src + rng.normal(0, 0.01, size=src.shape)
        est = AffineMotionEstimator().fit(src, dst)
        fit = fit_affine_arrays(src, dst)
        assert np.allclose(est.matrix_, fit.matrix)
        assert np.allclose(est.translation_, fit.translation)
        assert est.residual_ == fit.residual
        assert est.n_points_ == fit.n_points

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            AffineMotionEstimator().predict(np.zeros((3, 2)))

    def test_sklearn_params_clone(self):
        est = AffineMotionEstimator(sv_cutoff=1e-8)
        assert est.get_params() == {"sv_cutoff": 1e-8}
        cloned = clone(est)
        assert cloned.get_params() == est.get_params()
        est.set_params(sv_cutoff=1e-6)
        assert est.sv_cutoff == 1e-6

    def test_bad_shapes_rejected(self):
        with pytest.raises(ValueError):
            AffineMotionEstimator().fit(np.zeros((4, 3)), np.zeros((4, 3)))
        with pytest.raises(ValueError):
            AffineMotionEstimator().fit(np.zeros((4, 2)), np.zeros((5, 2)))

    def test_score_is_r2_like(self, rng):
        src = rng.uniform(0, 1, size=(17, 2))
        dst = src + [0.1, 0.2]
        est = AffineMotionEstimator().fit(src, dst)
        assert est.score(src, dst) == pytest.approx(1.0)


@pytest.fixture(scope="module")
def corpus():
    return planted_corpus(seed=5150, n=30)


class TestActionClipSieve:
    def test_predict_matches_run_cascade(self, corpus):
        sieve = ActionClipSieve().fit()
        records = [rec for rec, _ in corpus]
        got = sieve.predict(records)
        cfg = FilterConfig()
        lexicon = load_verb_lexicon()
        want = np.array([run_cascade(r, cfg, lexicon)[1] for r in records])
        assert np.array_equal(got, want)

    def test_decide_carries_verdicts(self, corpus):
        sieve = ActionClipSieve().fit()
        decisions = sieve.decide([rec for rec, _ in corpus])
        assert decisions[0].video_id == corpus[0][0].meta.video_id
        assert len(decisions[0].verdicts) >= 1
        for d in decisions:  # scores stay JSON-serializable plain floats
            json.dumps(d.to_json_dict())

    def test_not_fitted(self, corpus):
        with pytest.raises(NotFittedError):
            ActionClipSieve().predict([corpus[0][0]])

    def test_params_round_trip_and_clone(self):
        sieve = ActionClipSieve(l1_threshold=0.1, max_humans=3)
        params = sieve.get_params()
        assert params["l1_threshold"] == 0.1
        assert params["max_humans"] == 3
        cloned = clone(sieve)
        assert cloned.get_params() == params
        sieve.set_params(min_coverage=0.2)
        assert sieve.min_coverage == 0.2

    def test_config_mirrors_params(self):
        sieve = ActionClipSieve(iou_min=0.25, affine_scope="per_tracklet").fit()
        assert sieve.config_.iou_min == 0.25
        assert sieve.config_.affine_scope == "per_tracklet"

    def test_invalid_params_surface_at_fit(self):
        with pytest.raises(ValueError):
            ActionClipSieve(min_clip_s=30.0, max_clip_s=5.0).fit()

    def test_type_checked_inputs(self):
        sieve = ActionClipSieve().fit()
        with pytest.raises(TypeError):
            sieve.predict(["not a record"])

    def test_threshold_tightening_only_removes(self, corpus):
        records = [rec for rec, _ in corpus]
        base = ActionClipSieve().fit().predict(records)
        strict = ActionClipSieve(l1_threshold=0.3).fit().predict(records)
        assert not np.any(strict & ~base)
