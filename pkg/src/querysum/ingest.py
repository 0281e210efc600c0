"""Video ingestion: fixed-length shot segmentation, frame preprocessing,
detection-record parsing, and per-shot feature assembly.

Each shot contributes one 84-dimensional feature row: an 80-bin class
histogram (normalized by detection count), salient coverage, the salient
centroid, and the total detected-object area ratio.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

import cv2
import jsonschema
import numpy as np

from .classes import CLASS_NAMES, NUM_CLASSES
from .errors import ConfigError, DimensionError, InputError, SchemaError
from .saliency import SaliencyMask

DEFAULT_SHOT_LENGTH_S = 5.0
CONFIDENCE_FLOOR = 0.5
TARGET_SIZE = 416
FEATURE_DIM = NUM_CLASSES + 4

DETECTIONS_SCHEMA = {
    "type": "object",
    "required": ["video_id", "fps", "shot_length_s", "shots"],
    "properties": {
        "video_id": {"type": "string"},
        "fps": {"type": "number", "exclusiveMinimum": 0},
        "shot_length_s": {"type": "number", "exclusiveMinimum": 0},
        "shots": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["shot_id", "frame_index", "detections"],
                "properties": {
                    "shot_id": {"type": "integer", "minimum": 0},
                    "frame_index": {"type": "integer", "minimum": 0},
                    "detections": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["class_id", "class_name", "confidence", "bbox"],
                            "properties": {
                                "class_id": {
                                    "type": "integer",
                                    "minimum": 0,
                                    "maximum": NUM_CLASSES - 1,
                                },
                                "class_name": {"type": "string"},
                                "confidence": {"type": "number", "minimum": 0, "maximum": 1},
                                "bbox": {
                                    "type": "array",
                                    "minItems": 4,
                                    "maxItems": 4,
                                    "items": {"type": "number"},
                                },
                            },
                        },
                    },
                },
            },
        },
    },
}


@dataclass(frozen=True)
class DetectionRecord:
    """One detected object with a normalized (cx, cy, w, h) box."""

    class_id: int
    class_name: str
    confidence: float
    bbox: tuple[float, float, float, float]

    def __post_init__(self):
        if not 0 <= self.class_id < NUM_CLASSES:
            raise SchemaError(f"class_id {self.class_id} outside the 80-class table")
        if self.class_name != CLASS_NAMES[self.class_id]:
            raise SchemaError(
                f"class_name {self.class_name!r} does not match id {self.class_id} "
                f"({CLASS_NAMES[self.class_id]!r})"
            )
        if not 0.0 <= self.confidence <= 1.0:
            raise SchemaError(f"confidence {self.confidence} outside [0, 1]")
        cx, cy, w, h = self.bbox
        if not (0.0 <= cx <= 1.0 and 0.0 <= cy <= 1.0):
            raise SchemaError(f"bbox centroid ({cx}, {cy}) outside the unit square")
        if not (0.0 < w <= 1.0 and 0.0 < h <= 1.0):
            raise SchemaError(f"bbox extents ({w}, {h}) outside (0, 1]")

    @property
    def centroid(self) -> tuple[float, float]:
        return self.bbox[0], self.bbox[1]

    @property
    def area(self) -> float:
        return self.bbox[2] * self.bbox[3]


@dataclass(frozen=True)
class ShotSpan:
    """Time span of one shot plus its representative frame index."""

    shot_id: int
    t_start: float
    t_end: float
    rep_frame_index: int


@dataclass
class ShotRecord:
    """One shot with everything later stages need."""

    shot_id: int
    t_start: float
    t_end: float
    frame_index: int
    detections: list[DetectionRecord] = field(default_factory=list)
    saliency: SaliencyMask | None = None
    feature: np.ndarray | None = None


@dataclass(frozen=True)
class DetectionsDocument:
    """Parsed detections JSON: per-shot records keyed by shot_id."""

    video_id: str
    fps: float
    shot_length_s: float
    frame_indices: dict[int, int]
    detections: dict[int, list[DetectionRecord]]

    @property
    def shot_ids(self) -> list[int]:
        return sorted(self.frame_indices)

    def detections_for(self, shot_id: int) -> list[DetectionRecord]:
        return self.detections.get(shot_id, [])


def segment(duration_s: float, fps: float, shot_length_s: float = DEFAULT_SHOT_LENGTH_S) -> list[ShotSpan]:
    """Partition ``[0, duration_s]`` into fixed-length shots.

    The final shot keeps whatever remains even if shorter than
    ``shot_length_s``. The representative frame is the temporal midpoint,
    ``floor(fps * (t_start + t_end) / 2)``.
    """
    if duration_s <= 0:
        raise InputError(f"duration must be positive, got {duration_s}")
    if fps <= 0:
        raise InputError(f"fps must be positive, got {fps}")
    if shot_length_s <= 0:
        raise ConfigError(f"shot_length_s must be positive, got {shot_length_s}")
    # 1e-12 guard avoids a sliver shot when duration is a float multiple of
    # the length; the last span always ends exactly at the duration
    count = max(1, math.ceil(duration_s / shot_length_s - 1e-12))
    spans = []
    for i in range(count):
        t0 = i * shot_length_s
        t1 = duration_s if i == count - 1 else (i + 1) * shot_length_s
        spans.append(ShotSpan(i, t0, t1, int(fps * (t0 + t1) / 2)))
    return spans


def _equalization_lut(y: np.ndarray) -> np.ndarray:
    """Cumulative-distribution lookup table; identity for a constant plane."""
    hist = np.bincount(y.ravel(), minlength=256)
    cdf = hist.cumsum()
    total = int(cdf[-1])
    cdf_min = int(cdf[hist.nonzero()[0][0]])
    if total == cdf_min:
        return np.arange(256, dtype=np.uint8)
    scaled = (cdf - cdf_min) * 255.0 / (total - cdf_min)
    return np.clip(np.rint(scaled), 0, 255).astype(np.uint8)


def preprocess_frame(frame: np.ndarray) -> np.ndarray:
    """Resize to 416x416 (bilinear) and equalize the luminance channel.

    Equalization runs on Y of YCrCb only, so chroma is preserved and a
    constant-gray frame maps to itself.
    """
    frame = np.asarray(frame)
    if frame.ndim != 3 or frame.shape[2] != 3 or frame.shape[0] == 0 or frame.shape[1] == 0:
        raise DimensionError(f"expected a non-empty HxWx3 frame, got shape {frame.shape}")
    if frame.dtype != np.uint8:
        if frame.min() < 0 or frame.max() > 255:
            raise InputError("frame channels must lie in [0, 255]")
        frame = frame.astype(np.uint8)
    resized = cv2.resize(frame, (TARGET_SIZE, TARGET_SIZE), interpolation=cv2.INTER_LINEAR)
    ycc = cv2.cvtColor(resized, cv2.COLOR_RGB2YCrCb)
    y = ycc[:, :, 0]
    ycc[:, :, 0] = _equalization_lut(y)[y]
    return cv2.cvtColor(ycc, cv2.COLOR_YCrCb2RGB)


def _clamped_record(raw: dict) -> DetectionRecord | None:
    """Validate one raw detection dict; clamp its box to the unit square.

    Returns None when the record is filtered out by the confidence floor.
    """
    cx, cy, w, h = (float(v) for v in raw["bbox"])
    if w <= 0 or h <= 0:
        raise SchemaError(f"malformed bbox with non-positive extent: {raw['bbox']}")
    if raw["confidence"] < CONFIDENCE_FLOOR:
        return None
    x0 = np.clip(cx - w / 2, 0.0, 1.0)
    x1 = np.clip(cx + w / 2, 0.0, 1.0)
    y0 = np.clip(cy - h / 2, 0.0, 1.0)
    y1 = np.clip(cy + h / 2, 0.0, 1.0)
    if x1 <= x0 or y1 <= y0:
        raise SchemaError(f"bbox {raw['bbox']} lies entirely outside the unit square")
    return DetectionRecord(
        class_id=int(raw["class_id"]),
        class_name=str(raw["class_name"]),
        confidence=float(raw["confidence"]),
        bbox=(float((x0 + x1) / 2), float((y0 + y1) / 2), float(x1 - x0), float(y1 - y0)),
    )


def parse_detections(doc: dict) -> DetectionsDocument:
    """Parse and validate a detections JSON document.

    Records below the 0.5 confidence floor are dropped; boxes are clamped
    to the unit square; shots absent from the document simply yield empty
    lists from :meth:`DetectionsDocument.detections_for`.
    """
    try:
        jsonschema.validate(doc, DETECTIONS_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"detections document invalid: {exc.message}") from exc
    frame_indices: dict[int, int] = {}
    detections: dict[int, list[DetectionRecord]] = {}
    for shot in doc["shots"]:
        sid = shot["shot_id"]
        if sid in frame_indices:
            raise SchemaError(f"duplicate shot_id {sid}")
        frame_indices[sid] = shot["frame_index"]
        kept = []
        for raw in shot["detections"]:
            rec = _clamped_record(raw)
            if rec is not None:
                kept.append(rec)
        detections[sid] = kept
    return DetectionsDocument(
        video_id=doc["video_id"],
        fps=float(doc["fps"]),
        shot_length_s=float(doc["shot_length_s"]),
        frame_indices=frame_indices,
        detections=detections,
    )


def load_detections(path: str | os.PathLike) -> DetectionsDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError as exc:
        raise InputError(f"detections file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"detections file is not valid JSON: {exc}") from exc
    return parse_detections(doc)


def parse_query_detections(doc) -> list[DetectionRecord]:
    """Parse detections for the query image.

    Accepts either a bare JSON list of detection records or a full
    detections document containing exactly one shot.
    """
    if isinstance(doc, list):
        records = []
        for raw in doc:
            try:
                jsonschema.validate(
                    raw, DETECTIONS_SCHEMA["properties"]["shots"]["items"]["properties"]["detections"]["items"]
                )
            except jsonschema.ValidationError as exc:
                raise SchemaError(f"query detection invalid: {exc.message}") from exc
            rec = _clamped_record(raw)
            if rec is not None:
                records.append(rec)
        return records
    parsed = parse_detections(doc)
    if len(parsed.shot_ids) != 1:
        raise SchemaError(
            f"query detections document must contain exactly one shot, got {len(parsed.shot_ids)}"
        )
    return parsed.detections_for(parsed.shot_ids[0])


def feature_vector(detections: list[DetectionRecord], saliency: SaliencyMask) -> np.ndarray:
    """Assemble the 84-dim feature row for one shot."""
    vec = np.zeros(FEATURE_DIM)
    if detections:
        for det in detections:
            vec[det.class_id] += 1.0
        vec[:NUM_CLASSES] /= len(detections)
    vec[NUM_CLASSES] = saliency.coverage()
    vec[NUM_CLASSES + 1], vec[NUM_CLASSES + 2] = saliency.centroid()
    vec[NUM_CLASSES + 3] = min(sum(det.area for det in detections), 1.0)
    return vec


def assemble_features(shots: list[ShotRecord]) -> np.ndarray:
    """Stack per-shot feature vectors into the n x 84 feature matrix."""
    if not shots:
        raise InputError("cannot assemble features from an empty shot list")
    rows = []
    for shot in shots:
        if shot.saliency is None:
            raise InputError(f"shot {shot.shot_id} has no saliency mask")
        row = feature_vector(shot.detections, shot.saliency)
        shot.feature = row
        rows.append(row)
    return np.stack(rows)
