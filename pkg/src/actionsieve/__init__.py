"""actionsieve: keep video clips that show clear human action.

A deterministic three-stage filter cascade over pose-detection records
(metadata, human existence, human action with an affine camera-motion
discriminator), plus benchmark-side caption/QA metrics and a batch CLI.
"""

from .captions import (
    AccuracyReport,
    AnswerOutcome,
    AnswerTransportError,
    AnsweringClient,
    CaptionDoc,
    Event,
    GsbJudgment,
    QAItem,
    ScriptedAnswerer,
    Subject,
    SubjectAttributes,
    accuracy,
    caption_eval_round,
    dataset_stats,
    format_gsb,
    gsb_score,
    parse_answer_reply,
    read_caption_docs,
    read_qa_items,
    shuffle_options,
    validate_caption_doc,
    validate_qa_item,
)
from .estimators import ActionClipSieve, AffineMotionEstimator
from .filters import (
    FilterConfig,
    caption_has_verb,
    human_action_filter,
    human_existence_filter,
    load_verb_lexicon,
    metadata_filter,
    run_cascade,
)
from .motion import (
    AffineFit,
    InsufficientPointsError,
    PointCorrespondence,
    build_tracklets,
    clip_affine_residual,
    compute_iou,
    fit_affine,
    fit_affine_arrays,
    keypoint_motion_l1,
)
from .pipeline import (
    DecisionRecord,
    PipelineStats,
    SceneBoundaryReport,
    detect_scene_boundaries,
    emit_stats_report,
    run_pipeline,
    write_decisions,
)
from .records import (
    COCO17_KEYPOINT_NAMES,
    BoundingBox,
    ClipMeta,
    ClipRecord,
    Keypoint,
    PersonDetection,
    PoseFrame,
    RecordParseError,
    SchemaError,
    StageVerdict,
    Tracklet,
    canonical_serialize,
    parse_clip_record,
    read_clip_records,
)

__version__ = "0.1.0"
