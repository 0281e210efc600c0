"""Run a detector over representative frames and emit detections JSON.

The output document is the wire format the summarizer ingests: one shot
per fixed-length segment, frame files found by their integer stem in the
frames directory, detections normalized to (cx, cy, w, h) in [0, 1] and
filtered by the confidence threshold after per-class NMS.
"""

from __future__ import annotations

import json
import logging
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

import cv2
import numpy as np

from .backends import RawDetection, make_backend
from .classes import CLASS_NAMES
from .errors import AdapterError

log = logging.getLogger(__name__)

IMAGE_SUFFIXES = (".png", ".pgm", ".jpg", ".jpeg", ".bmp", ".ppm", ".tif", ".tiff")


@dataclass
class AdapterConfig:
    frames_dir: str
    output_path: str
    model: str = "synthetic"
    weights_path: str | None = None
    confidence_threshold: float = 0.5
    nms_threshold: float = 0.4
    input_size: int = 416
    fps: float = 30.0
    shot_length_s: float = 5.0
    video_duration_s: float | None = None
    video_id: str = ""
    single: bool = False

    def __post_init__(self):
        if not 0.0 < self.confidence_threshold < 1.0:
            raise AdapterError(f"confidence threshold {self.confidence_threshold} outside (0, 1)")
        if not 0.0 < self.nms_threshold < 1.0:
            raise AdapterError(f"nms threshold {self.nms_threshold} outside (0, 1)")


def index_frames(directory: str | Path) -> dict[int, Path]:
    directory = Path(directory)
    if not directory.is_dir():
        raise AdapterError(f"not a directory: {directory}")
    table: dict[int, Path] = {}
    for path in sorted(directory.iterdir()):
        if path.suffix.lower() in IMAGE_SUFFIXES:
            try:
                table.setdefault(int(path.stem), path)
            except ValueError:
                continue
    return table


def box_iou(a, b) -> float:
    ax0, ay0, ax1, ay1 = a
    bx0, by0, bx1, by1 = b
    ix = max(0.0, min(ax1, bx1) - max(ax0, bx0))
    iy = max(0.0, min(ay1, by1) - max(ay0, by0))
    inter = ix * iy
    union = (ax1 - ax0) * (ay1 - ay0) + (bx1 - bx0) * (by1 - by0) - inter
    return inter / union if union > 0 else 0.0


def nms(detections: list[RawDetection], iou_threshold: float) -> list[RawDetection]:
    """Greedy per-class suppression, highest confidence first."""
    kept: list[RawDetection] = []
    by_class: dict[int, list[RawDetection]] = {}
    for d in detections:
        by_class.setdefault(d[0], []).append(d)
    for group in by_class.values():
        group.sort(key=lambda d: -d[1])
        chosen: list[RawDetection] = []
        for cand in group:
            if all(box_iou(cand[2], kept_det[2]) <= iou_threshold for kept_det in chosen):
                chosen.append(cand)
        kept.extend(chosen)
    kept.sort(key=lambda d: (-d[1], d[0]))
    return kept


def to_record(det: RawDetection, width: int, height: int) -> dict | None:
    """Normalize a pixel-space detection into a JSON record, clamped to the
    unit square; degenerate boxes collapse to None."""
    class_id, confidence, (x0, y0, x1, y1) = det
    x0, x1 = max(0.0, x0) / width, min(float(width), x1) / width
    y0, y1 = max(0.0, y0) / height, min(float(height), y1) / height
    if x1 <= x0 or y1 <= y0:
        return None
    return {
        "class_id": class_id,
        "class_name": CLASS_NAMES[class_id],
        "confidence": round(min(confidence, 1.0), 6),
        "bbox": [
            round((x0 + x1) / 2, 6),
            round((y0 + y1) / 2, 6),
            round(x1 - x0, 6),
            round(y1 - y0, 6),
        ],
    }


def detect_frame(backend, frame: np.ndarray, config: AdapterConfig) -> list[dict]:
    raw = backend.detect(frame)
    raw = [d for d in raw if d[1] >= config.confidence_threshold]
    raw = nms(raw, config.nms_threshold)
    height, width = frame.shape[:2]
    records = (to_record(d, width, height) for d in raw)
    return [r for r in records if r is not None]


def _load_rgb(path: Path, input_size: int) -> np.ndarray | None:
    img = cv2.imread(str(path), cv2.IMREAD_COLOR)
    if img is None:
        return None
    if max(img.shape[:2]) > 4 * input_size:
        scale = 4 * input_size / max(img.shape[:2])
        img = cv2.resize(img, None, fx=scale, fy=scale, interpolation=cv2.INTER_AREA)
    return cv2.cvtColor(img, cv2.COLOR_BGR2RGB)


def detect_shots(config: AdapterConfig) -> dict:
    """Build the detections document and write it atomically.

    Shots follow the fixed-length segmentation; each shot's representative
    frame is the file whose stem matches the midpoint frame index (or the
    nearest earlier frame). Unreadable or missing frames log a warning and
    leave that shot's detection list empty.
    """
    frames = index_frames(config.frames_dir)
    if not frames:
        raise AdapterError(f"no frame images found in {config.frames_dir}")
    backend = make_backend(config.model, config.weights_path)

    if config.single:
        shot_plan = [(0, min(frames))]
    else:
        duration = config.video_duration_s
        if duration is None:
            duration = (max(frames) + 1) / config.fps
        count = max(1, math.ceil(duration / config.shot_length_s - 1e-12))
        available = sorted(frames)
        shot_plan = []
        for sid in range(count):
            t0 = sid * config.shot_length_s
            t1 = min((sid + 1) * config.shot_length_s, duration)
            want = int(config.fps * (t0 + t1) / 2)
            # nearest available frame at or before the midpoint, else the first
            candidates = [f for f in available if f <= want]
            shot_plan.append((sid, candidates[-1] if candidates else available[0]))

    shots = []
    for shot_id, frame_index in shot_plan:
        detections: list[dict] = []
        frame = _load_rgb(frames[frame_index], config.input_size)
        if frame is None:
            log.warning("unreadable frame %s; emitting empty detections", frames[frame_index])
        else:
            detections = detect_frame(backend, frame, config)
        shots.append({"shot_id": shot_id, "frame_index": frame_index, "detections": detections})

    video_id = config.video_id or Path(config.frames_dir).name
    doc = {
        "video_id": video_id,
        "fps": config.fps,
        "shot_length_s": config.shot_length_s,
        "shots": shots,
    }
    _atomic_write_json(config.output_path, doc)
    return doc


def _atomic_write_json(path: str | os.PathLike, doc: dict) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
