"""Estimator-style front doors, so the kernel composes with sklearn tooling.

``AffineMotionEstimator`` wraps the least-squares affine fit as a regressor
(fit on matched point sets, predict mapped points), and ``ActionClipSieve``
wraps the whole cascade as a stateless classifier over ClipRecords. Both
follow the get_params/set_params contract, so clone, grid search and
pipelines work on them.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.exceptions import NotFittedError

from .filters import FilterConfig, load_verb_lexicon, run_cascade
from .motion import DEFAULT_SV_CUTOFF, fit_affine_arrays
from .pipeline import DecisionRecord
from .validation import check_clip_records, check_paired_points, check_points


class AffineMotionEstimator(RegressorMixin, BaseEstimator):
    """Least-squares affine map between two matched (h, w) point sets.

    After ``fit(X, y)`` with X the source points and y their positions in the
    next frame, exposes the linear part ``matrix_``, the ``translation_``,
    the mean squared point error ``residual_``, and ``degenerate_`` when the
    source points were collinear and the minimum-norm solution was used.
    """

    def __init__(self, sv_cutoff: float = DEFAULT_SV_CUTOFF):
        self.sv_cutoff = sv_cutoff

    def fit(self, X, y):
        src, dst = check_paired_points(X, y)
        fit = fit_affine_arrays(src, dst, sv_cutoff=self.sv_cutoff)
        self.matrix_ = fit.matrix
        self.translation_ = fit.translation
        self.residual_ = fit.residual
        self.n_points_ = fit.n_points
        self.degenerate_ = fit.degenerate
        return self

    def predict(self, X):
        if not hasattr(self, "matrix_"):
            raise NotFittedError("AffineMotionEstimator is not fitted yet")
        return check_points(X) @ self.matrix_.T + self.translation_


class ActionClipSieve(BaseEstimator):
    """The full metadata/existence/action cascade as a predict-style filter.

    ``predict`` returns a boolean keep/drop array over ClipRecords, and
    ``decide`` the per-clip verdict trail. The sieve is stateless apart from
    the verb lexicon loaded in ``fit``.
    """

    def __init__(
        self,
        min_short_side: int = 360,
        min_clip_s: float = 5.0,
        max_clip_s: float = 20.0,
        min_humans: int = 1,
        max_humans: int = 5,
        min_coverage: float = 0.10,
        l1_threshold: float = 0.085,
        affine_residual_threshold: float = 0.0016,
        iou_min: float = 0.3,
        conf_min: float = 0.3,
        require_all_tracklets: bool = False,
        affine_scope: str = "pooled",
        lexicon_path: str | None = None,
    ):
        self.min_short_side = min_short_side
        self.min_clip_s = min_clip_s
        self.max_clip_s = max_clip_s
        self.min_humans = min_humans
        self.max_humans = max_humans
        self.min_coverage = min_coverage
        self.l1_threshold = l1_threshold
        self.affine_residual_threshold = affine_residual_threshold
        self.iou_min = iou_min
        self.conf_min = conf_min
        self.require_all_tracklets = require_all_tracklets
        self.affine_scope = affine_scope
        self.lexicon_path = lexicon_path

    def _config(self) -> FilterConfig:
        return FilterConfig(
            min_short_side=self.min_short_side,
            min_clip_s=self.min_clip_s,
            max_clip_s=self.max_clip_s,
            min_humans=self.min_humans,
            max_humans=self.max_humans,
            min_coverage=self.min_coverage,
            l1_threshold=self.l1_threshold,
            affine_residual_threshold=self.affine_residual_threshold,
            iou_min=self.iou_min,
            conf_min=self.conf_min,
            require_all_tracklets=self.require_all_tracklets,
            affine_scope=self.affine_scope,
        )

    def fit(self, X=None, y=None):
        self.config_ = self._config()
        self.lexicon_ = load_verb_lexicon(self.lexicon_path)
        return self

    def _check_fitted(self):
        if not hasattr(self, "lexicon_"):
            raise NotFittedError("ActionClipSieve is not fitted yet; call fit() first")

    def predict(self, X) -> np.ndarray:
        self._check_fitted()
        records = check_clip_records(X)
        return np.array(
            [run_cascade(rec, self.config_, self.lexicon_)[1] for rec in records],
            dtype=bool,
        )

    def decide(self, X) -> list[DecisionRecord]:
        self._check_fitted()
        out = []
        for rec in check_clip_records(X):
            verdicts, final = run_cascade(rec, self.config_, self.lexicon_)
            out.append(
                DecisionRecord(
                    video_id=rec.meta.video_id,
                    clip_id=rec.meta.clip_id,
                    verdicts=tuple(verdicts),
                    final=final,
                    scores={v.stage: v.score for v in verdicts if v.score is not None},
                )
            )
        return out
