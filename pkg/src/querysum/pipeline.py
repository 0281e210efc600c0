"""End-to-end orchestration: detections + masks in, manifest + reports out.

Stages mirror the processing chain: shot preparation, query profiling,
feature assembly, distance scoring, solve, threshold, manifest. Per-shot
mask work runs in a thread pool sized by ``QUERYSUM_WORKERS``.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .config import RunConfig, worker_count
from .distances import DistanceVector, QueryProfile, build_query_profile, distance_vector
from .errors import InputError
from .images import load_rgb, read_mask
from .ingest import (
    DetectionsDocument,
    ShotRecord,
    assemble_features,
    load_detections,
    parse_query_detections,
    preprocess_frame,
    segment,
)
from .objective import ObjectiveMatrices, build_matrices
from .saliency import hsv_planes, salient_mask
from .solver import (
    SelectionMask,
    SelectionScores,
    SummaryManifest,
    adaptive_threshold,
    cccp_minimize,
    select_summary,
)

IMAGE_SUFFIXES = (".png", ".pgm", ".jpg", ".jpeg", ".bmp", ".ppm", ".tif", ".tiff")


@dataclass
class SummarizeResult:
    manifest: SummaryManifest
    scores: SelectionScores
    mask: SelectionMask
    dv: DistanceVector
    X: np.ndarray
    matrices: ObjectiveMatrices
    shots: list[ShotRecord]
    query: QueryProfile
    video_id: str
    video_time_s: float
    process_time_s: float
    speedup: float


def index_files(directory: str | Path) -> dict[int, Path]:
    """Map integer file stems to paths; non-numeric stems are ignored."""
    directory = Path(directory)
    if not directory.is_dir():
        raise InputError(f"not a directory: {directory}")
    table: dict[int, Path] = {}
    for path in sorted(directory.iterdir()):
        if path.suffix.lower() not in IMAGE_SUFFIXES:
            continue
        try:
            key = int(path.stem)
        except ValueError:
            continue
        table.setdefault(key, path)
    return table


def prepare_shots(cfg: RunConfig) -> tuple[DetectionsDocument, list[ShotRecord]]:
    """Load detections, derive shot spans, and attach saliency masks.

    Masks come from ``masks_dir`` (files named by shot_id) when available,
    otherwise from ``frames_dir`` (files named by frame index) through the
    preprocessing + saliency chain.
    """
    if cfg.detections is None:
        raise InputError("a detections JSON path is required")
    doc = load_detections(cfg.detections)
    if not doc.shot_ids:
        raise InputError("detections document lists no shots")
    n_shots = doc.shot_ids[-1] + 1
    duration = cfg.video_duration_s or n_shots * doc.shot_length_s
    spans = segment(duration, doc.fps, doc.shot_length_s)
    if len(spans) < n_shots:
        raise InputError(
            f"video duration {duration}s yields {len(spans)} shots but the "
            f"detections document references shot_id {n_shots - 1}"
        )
    shots = [
        ShotRecord(
            shot_id=span.shot_id,
            t_start=span.t_start,
            t_end=span.t_end,
            frame_index=doc.frame_indices.get(span.shot_id, span.rep_frame_index),
            detections=doc.detections_for(span.shot_id),
        )
        for span in spans
    ]

    masks = index_files(cfg.masks_dir) if cfg.masks_dir else {}
    frames = index_files(cfg.frames_dir) if cfg.frames_dir else {}

    def attach(shot: ShotRecord) -> None:
        if shot.shot_id in masks:
            shot.saliency = read_mask(masks[shot.shot_id], alpha=cfg.alpha)
            return
        if shot.frame_index in frames:
            frame = load_rgb(frames[shot.frame_index])
            shot.saliency = salient_mask(hsv_planes(preprocess_frame(frame)), cfg.alpha)
            return
        raise InputError(
            f"no mask (shot_id {shot.shot_id}) or frame (index {shot.frame_index}) available"
        )

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        list(pool.map(attach, shots))
    return doc, shots


def build_query(cfg: RunConfig) -> QueryProfile:
    """Assemble the query profile from an image or a precomputed mask."""
    detections = []
    if cfg.query_detections is not None:
        try:
            with open(cfg.query_detections, "r", encoding="utf-8") as fh:
                detections = parse_query_detections(json.load(fh))
        except FileNotFoundError as exc:
            raise InputError(f"query detections not found: {cfg.query_detections}") from exc
    if cfg.query_mask is not None:
        return QueryProfile(detections=tuple(detections), saliency=read_mask(cfg.query_mask, cfg.alpha))
    if cfg.query_image is not None:
        return build_query_profile(load_rgb(cfg.query_image), detections, cfg.alpha)
    raise InputError("a query image or a precomputed query mask is required")


def _write_csv(path: Path, header: str, rows: list[str]) -> None:
    path.write_text(header + "\n" + "".join(r + "\n" for r in rows), encoding="utf-8")


def write_scores_csv(path: Path, scores: SelectionScores, mask: SelectionMask) -> None:
    rows = [
        f"{i},{float(z)!r},{int(sel)}"
        for i, (z, sel) in enumerate(zip(scores.z, mask.selected))
    ]
    _write_csv(path, "shot_id,z_m,selected", rows)


def write_distances_csv(path: Path, dv: DistanceVector) -> None:
    rows = [f"{i},{float(d)!r},{float(s)!r}" for i, (d, s) in enumerate(zip(dv.d, dv.s))]
    _write_csv(path, "shot_id,d,s", rows)


def run_summarize(cfg: RunConfig, write_manifest: bool = True) -> SummarizeResult:
    """Run the full pipeline; the timed window spans segmentation through
    the manifest write."""
    out_dir = Path(cfg.output_dir) if cfg.output_dir else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)

    t0 = time.perf_counter()
    doc, shots = prepare_shots(cfg)
    query = build_query(cfg)
    X = assemble_features(shots)
    dv = distance_vector(query, shots, cfg.phi1_mode)
    matrices = build_matrices(X, dv, cfg.relevance_mode)
    scores = cccp_minimize(matrices, cfg.loss_params(), cfg.solver_config())
    mask = adaptive_threshold(scores, cfg.threshold_mode, cfg.k)
    manifest = select_summary(shots, mask, scores, dv, doc.video_id, cfg.to_dict())
    if out_dir is not None:
        write_scores_csv(out_dir / "scores.csv", scores, mask)
        write_distances_csv(out_dir / "distances.csv", dv)
        if write_manifest:
            manifest.write(out_dir / "manifest.json")
    process_time = time.perf_counter() - t0

    video_time = cfg.video_duration_s or len(shots) * doc.shot_length_s
    speedup = video_time / process_time if process_time > 0 else float("inf")
    result = SummarizeResult(
        manifest=manifest,
        scores=scores,
        mask=mask,
        dv=dv,
        X=X,
        matrices=matrices,
        shots=shots,
        query=query,
        video_id=doc.video_id,
        video_time_s=video_time,
        process_time_s=process_time,
        speedup=speedup,
    )
    if out_dir is not None:
        write_run_report(out_dir / "run_report.json", result, cfg)
    return result


def write_run_report(path: Path, result: SummarizeResult, cfg: RunConfig) -> None:
    report = {
        "video_id": result.video_id,
        "n_shots": len(result.shots),
        "selected_count": result.mask.count(),
        "iterations": result.scores.iterations_used,
        "final_loss": result.scores.final_loss,
        "converged": result.scores.converged,
        "threshold_mode": result.mask.mode,
        "threshold_value": float(result.mask.threshold_used),
        "process_time_s": result.process_time_s,
        "video_time_s": result.video_time_s,
        "speedup": result.speedup,
        "config": cfg.to_dict(),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_timeline_csv(path: Path, manifest: SummaryManifest, gt_ids: set[int], n_shots: int) -> None:
    """Two-track 0/1 timeline: predicted vs ground truth per shot index."""
    predicted = set(manifest.shot_ids)
    rows = [f"{i},{int(i in predicted)},{int(i in gt_ids)}" for i in range(n_shots)]
    _write_csv(path, "shot_id,predicted,ground_truth", rows)


def write_timeline_svg(path: Path, manifest: SummaryManifest, gt_ids: set[int], n_shots: int) -> None:
    """Same two tracks as the CSV, drawn as colored cells for eyeballing."""
    cell, gap, left = 12, 2, 110
    width = left + n_shots * (cell + gap) + gap
    predicted = set(manifest.shot_ids)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="64" '
        f'font-family="monospace" font-size="11">'
    ]
    tracks = [("predicted", predicted, "#2e8b57"), ("ground truth", gt_ids, "#1e5aa8")]
    for row, (label, ids, color) in enumerate(tracks):
        y = 8 + row * (cell + 14)
        parts.append(f'<text x="4" y="{y + cell - 2}">{label}</text>')
        for i in range(n_shots):
            x = left + i * (cell + gap)
            fill = color if i in ids else "#dddddd"
            parts.append(f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" fill="{fill}"/>')
    parts.append("</svg>")
    path.write_text("".join(parts) + "\n", encoding="utf-8")
