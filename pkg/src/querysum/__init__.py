"""Query-image conditioned keyframe selection for video summarization."""

from .classes import CLASS_IDS, CLASS_NAMES, NUM_CLASSES
from .config import RunConfig, load_config
from .distances import (
    DistanceVector,
    QueryProfile,
    build_query_profile,
    cumulative_distance,
    distance_vector,
    paired_detections,
    phi1,
    phi2,
    phi3,
    phi4,
)
from .errors import (
    ConfigError,
    DimensionError,
    InputError,
    NumericError,
    QuerysumError,
    SchemaError,
)
from .evaluation import (
    EvalReport,
    GroundTruth,
    bipartite_match,
    concept_iou,
    evaluate,
    load_ground_truth,
    timing_report,
)
from .ingest import (
    DetectionRecord,
    DetectionsDocument,
    FEATURE_DIM,
    ShotRecord,
    ShotSpan,
    assemble_features,
    feature_vector,
    load_detections,
    parse_detections,
    preprocess_frame,
    segment,
)
from .objective import (
    LossParams,
    ObjectiveMatrices,
    build_matrices,
    loss,
    query_trace,
    summary_variance_trace,
)
from .pipeline import SummarizeResult, run_summarize
from .saliency import (
    HsvPlanes,
    SaliencyMask,
    hsv_planes,
    mask_difference,
    salient_mask,
)
from .solver import (
    SelectionMask,
    SelectionScores,
    SolverConfig,
    SummaryManifest,
    adaptive_threshold,
    cccp_minimize,
    select_summary,
)

__version__ = "0.1.0"
