"""Concatenate the manifest's selected shot spans into a summary video."""

from __future__ import annotations

import json
import logging
from pathlib import Path

import cv2

from .errors import RenderError

log = logging.getLogger(__name__)


def load_manifest_spans(path: str | Path) -> list[tuple[float, float]]:
    """(t_start, t_end) spans of the selected shots, in manifest order."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        return [(float(e["t_start"]), float(e["t_end"])) for e in doc["selected"]]
    except FileNotFoundError as exc:
        raise RenderError(f"manifest not found: {path}") from exc
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise RenderError(f"malformed manifest {path}: {exc}") from exc


def render_summary(manifest_path: str | Path, video_path: str | Path, output_path: str | Path,
                   fourcc: str = "mp4v") -> int:
    """Write the summary video; returns the number of frames written.

    Spans are cut on frame boundaries (round(t * fps)), so each cut can be
    off by at most one frame. An empty manifest is rejected rather than
    producing a zero-length file.
    """
    spans = load_manifest_spans(manifest_path)
    if not spans:
        log.warning("manifest selects no shots; refusing to write an empty video")
        raise RenderError("empty manifest: nothing to render")

    capture = cv2.VideoCapture(str(video_path))
    if not capture.isOpened():
        raise RenderError(f"cannot open video: {video_path}")
    try:
        fps = capture.get(cv2.CAP_PROP_FPS) or 30.0
        width = int(capture.get(cv2.CAP_PROP_FRAME_WIDTH))
        height = int(capture.get(cv2.CAP_PROP_FRAME_HEIGHT))
        total = int(capture.get(cv2.CAP_PROP_FRAME_COUNT))
        writer = cv2.VideoWriter(
            str(output_path), cv2.VideoWriter_fourcc(*fourcc), fps, (width, height)
        )
        if not writer.isOpened():
            raise RenderError(f"cannot open encoder {fourcc!r} for {output_path}")
        written = 0
        try:
            for t0, t1 in spans:
                start = max(0, round(t0 * fps))
                stop = min(total, round(t1 * fps)) if total > 0 else round(t1 * fps)
                capture.set(cv2.CAP_PROP_POS_FRAMES, start)
                for _ in range(start, stop):
                    ok, frame = capture.read()
                    if not ok:
                        break
                    writer.write(frame)
                    written += 1
        finally:
            writer.release()
    finally:
        capture.release()
    if written == 0:
        raise RenderError("no frames decoded for the selected spans")
    log.info("wrote %d frames (%.2fs at %.3g fps) to %s", written, written / fps, fps, output_path)
    return written
