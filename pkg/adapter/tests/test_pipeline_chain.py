"""Both packages chained through their file interfaces, CLI to CLI:
detect -> summarize -> evaluate -> timeline -> render.

The fixture keeps all blobs in the frame corner so feature cross-talk
stays small, gives each distractor shot a unique class, and bounds the
solver to 8 iterations: that is the regime where the relaxed scores are
still informative (they all saturate to 1 if the solve runs to its fixed
point, see the summarizer's solver notes).
"""

import json
import subprocess
import sys

import cv2
import numpy as np
import pytest

FPS = 10.0
N_SHOTS = 7
RELEVANT = (2, 5)
DURATION = N_SHOTS * 5.0
DISTRACTOR_BGR = [(128, 255, 0), (255, 255, 0), (255, 0, 0), (255, 0, 128), (85, 0, 255)]


def shot_frame(sid):
    frame = np.full((120, 160, 3), 230, np.uint8)
    if sid in RELEVANT:
        frame[0:10, 0:10] = (20, 20, 220)     # person (red)
        frame[0:10, 14:24] = (0, 255, 255)    # car (yellow)
        frame[14:24, 0:10] = (0, 255, 0)      # dog (green)
    else:
        k = [s for s in range(N_SHOTS) if s not in RELEVANT].index(sid)
        frame[0:10, 0:10] = DISTRACTOR_BGR[k]  # one unique-hue blob
    return frame


@pytest.fixture
def chain_fixture(tmp_path):
    frames = tmp_path / "frames"
    frames.mkdir()
    for sid in range(N_SHOTS):
        index = int(FPS * (sid * 5 + 2.5))
        assert cv2.imwrite(str(frames / f"{index}.png"), shot_frame(sid))
    writer = cv2.VideoWriter(
        str(tmp_path / "in.mp4"), cv2.VideoWriter_fourcc(*"mp4v"), FPS, (160, 120)
    )
    for i in range(int(FPS * DURATION)):
        writer.write(shot_frame(int(i / FPS / 5)))
    writer.release()
    query = tmp_path / "query"
    query.mkdir()
    assert cv2.imwrite(str(query / "0.png"), shot_frame(RELEVANT[0]))
    gt = {
        "video_id": "frames",
        "shots": [{"shot_id": s, "concepts": ["person", "car", "dog"]} for s in RELEVANT],
    }
    (tmp_path / "gt.json").write_text(json.dumps(gt), encoding="utf-8")
    return tmp_path


def run_cli(module, args):
    proc = subprocess.run(
        [sys.executable, "-m", module, *args], capture_output=True, text=True, timeout=120
    )
    assert proc.returncode == 0, f"{module} {args}\nstdout: {proc.stdout}\nstderr: {proc.stderr}"
    return proc


def test_detect_summarize_evaluate_render(chain_fixture):
    tmp = chain_fixture
    run_cli("querysum_adapter.cli", [
        "detect", "--frames", str(tmp / "frames"), "--out", str(tmp / "detections.json"),
        "--fps", "10", "--shot-length", "5", "--duration", str(DURATION),
    ])
    run_cli("querysum_adapter.cli", [
        "detect", "--frames", str(tmp / "query"), "--out", str(tmp / "query_detections.json"),
        "--single",
    ])
    run_cli("querysum.cli", [
        "summarize", "--detections", str(tmp / "detections.json"),
        "--frames-dir", str(tmp / "frames"),
        "--query-image", str(tmp / "query" / "0.png"),
        "--query-detections", str(tmp / "query_detections.json"),
        "--video-duration", str(DURATION),
        "--phi1-mode", "symdiff", "--threshold-mode", "mean_plus_k_sigma",
        "--max-iters", "8", "--out-dir", str(tmp / "out"),
    ])
    manifest = json.loads((tmp / "out" / "manifest.json").read_text())
    assert [e["shot_id"] for e in manifest["selected"]] == list(RELEVANT)

    proc = run_cli("querysum.cli", [
        "evaluate", "--manifest", str(tmp / "out" / "manifest.json"),
        "--ground-truth", str(tmp / "gt.json"),
        "--report", str(tmp / "out" / "run_report.json"),
        "--out", str(tmp / "out" / "eval.json"),
    ])
    assert "F1=1.0000" in proc.stdout
    report = json.loads((tmp / "out" / "eval.json").read_text())
    assert report["f1"] == 1.0 and report["speedup"] > 1.0

    run_cli("querysum.cli", [
        "timeline", "--manifest", str(tmp / "out" / "manifest.json"),
        "--ground-truth", str(tmp / "gt.json"), "--out", str(tmp / "out" / "timeline.csv"),
    ])
    rows = (tmp / "out" / "timeline.csv").read_text().splitlines()
    assert len(rows) == N_SHOTS + 1

    run_cli("querysum_adapter.cli", [
        "render", "--manifest", str(tmp / "out" / "manifest.json"),
        "--video", str(tmp / "in.mp4"), "--out", str(tmp / "summary.mp4"),
    ])
    cap = cv2.VideoCapture(str(tmp / "summary.mp4"))
    frames_written = int(cap.get(cv2.CAP_PROP_FRAME_COUNT))
    cap.release()
    assert abs(frames_written - len(RELEVANT) * 5 * FPS) <= 2
