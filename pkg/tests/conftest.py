"""Shared builders for masks, detections, and on-disk pipeline fixtures."""

import json

import numpy as np
import pytest

from querysum.classes import CLASS_IDS, CLASS_NAMES
from querysum.images import write_pgm
from querysum.ingest import DetectionRecord, ShotRecord
from querysum.saliency import SaliencyMask


def bool_mask(rows, alpha=0.7):
    return SaliencyMask(mask=np.asarray(rows, dtype=bool), alpha=alpha)


def det(name, cx=0.5, cy=0.5, w=0.1, h=0.1, confidence=0.9):
    return DetectionRecord(
        class_id=CLASS_IDS[name], class_name=name, confidence=confidence, bbox=(cx, cy, w, h)
    )


def raw_det(name, cx=0.5, cy=0.5, w=0.1, h=0.1, confidence=0.9, class_id=None):
    return {
        "class_id": CLASS_IDS[name] if class_id is None else class_id,
        "class_name": name,
        "confidence": confidence,
        "bbox": [cx, cy, w, h],
    }


def shot(shot_id=0, detections=(), mask=None, t_start=None, t_end=None, frame_index=0):
    if mask is None:
        mask = bool_mask(np.zeros((4, 4), dtype=bool))
    t_start = shot_id * 5.0 if t_start is None else t_start
    t_end = t_start + 5.0 if t_end is None else t_end
    return ShotRecord(
        shot_id=shot_id,
        t_start=t_start,
        t_end=t_end,
        frame_index=frame_index,
        detections=list(detections),
        saliency=mask,
    )


def detections_doc(shots, video_id="vid", fps=30.0, shot_length_s=5.0):
    """Raw JSON-shaped detections document from {shot_id: [raw records]}."""
    return {
        "video_id": video_id,
        "fps": fps,
        "shot_length_s": shot_length_s,
        "shots": [
            {"shot_id": sid, "frame_index": int(fps * (sid * shot_length_s + shot_length_s / 2)),
             "detections": list(records)}
            for sid, records in sorted(shots.items())
        ],
    }


def corner_mask(size, pixels):
    """Mask of the given square size with exactly the listed (row, col) set."""
    m = np.zeros((size, size), dtype=bool)
    for r, c in pixels:
        m[r, c] = True
    return SaliencyMask(mask=m, alpha=0.7)


@pytest.fixture
def planted_fixture(tmp_path):
    """30-shot on-disk fixture: shots 0-4 mirror the query, 5-29 do not.

    Planted shots repeat the query's seven classes at the query's locations
    and sizes and reuse its one-pixel corner mask, so their distance is ~0.
    The others each carry one distinct unrelated class and a mask shifted
    by a pixel, leaving the class-count difference (6) to dominate their
    distance. Feature cross-talk is kept near zero so the relaxed scores
    spread instead of saturating together.
    """
    n_shots, n_planted = 30, 5
    query_classes = CLASS_NAMES[:7]
    query_dets = [
        raw_det(name, cx=0.1 + 0.1 * i, cy=0.2 + 0.08 * i, w=0.04, h=0.04)
        for i, name in enumerate(query_classes)
    ]
    shots = {}
    for sid in range(n_shots):
        if sid < n_planted:
            shots[sid] = [dict(d) for d in query_dets]
        else:
            name = CLASS_NAMES[7 + (sid - n_planted)]
            shots[sid] = [raw_det(name, cx=0.5, cy=0.5, w=0.04, h=0.04)]
    doc = detections_doc(shots, video_id="planted")
    det_path = tmp_path / "detections.json"
    det_path.write_text(json.dumps(doc), encoding="utf-8")

    masks_dir = tmp_path / "masks"
    masks_dir.mkdir()
    query_mask = corner_mask(256, [(0, 0)])
    other_mask = corner_mask(256, [(1, 1)])
    for sid in range(n_shots):
        write_pgm(masks_dir / f"{sid}.pgm", query_mask if sid < n_planted else other_mask)
    query_mask_path = tmp_path / "query_mask.pgm"
    write_pgm(query_mask_path, query_mask)
    query_det_path = tmp_path / "query_detections.json"
    query_det_path.write_text(json.dumps(query_dets), encoding="utf-8")

    return {
        "detections": str(det_path),
        "masks_dir": str(masks_dir),
        "query_mask": str(query_mask_path),
        "query_detections": str(query_det_path),
        "out_dir": str(tmp_path / "out"),
        "planted": set(range(n_planted)),
        "n_shots": n_shots,
        "tmp_path": tmp_path,
    }
