"""Adapter command line: `detect` emits detections JSON, `render` cuts the
summary video from a manifest."""

from __future__ import annotations

import argparse
import logging
import sys

from .detect import AdapterConfig, detect_shots
from .errors import AdapterError
from .render import render_summary

log = logging.getLogger("querysum_adapter")


def cmd_detect(args: argparse.Namespace) -> int:
    config = AdapterConfig(
        frames_dir=args.frames,
        output_path=args.out,
        model=args.model,
        weights_path=args.weights,
        confidence_threshold=args.conf,
        nms_threshold=args.nms,
        input_size=args.input_size,
        fps=args.fps,
        shot_length_s=args.shot_length,
        video_duration_s=args.duration,
        video_id=args.video_id or "",
        single=args.single,
    )
    doc = detect_shots(config)
    total = sum(len(s["detections"]) for s in doc["shots"])
    print(f"{args.out}: {len(doc['shots'])} shots, {total} detections (model={args.model})")
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    frames = render_summary(args.manifest, args.video, args.out, fourcc=args.fourcc)
    print(f"{args.out}: {frames} frames written")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="querysum-adapter")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("detect", help="run the detector over shot frames")
    p.add_argument("--frames", required=True, help="directory of frame images named by index")
    p.add_argument("--out", required=True, help="output detections JSON path")
    p.add_argument("--model", default="synthetic",
                   help="'synthetic' or 'torchvision[:<model_name>]'")
    p.add_argument("--weights", help="local weights file for the torchvision backend")
    p.add_argument("--conf", type=float, default=0.5)
    p.add_argument("--nms", type=float, default=0.4)
    p.add_argument("--input-size", type=int, default=416, dest="input_size")
    p.add_argument("--fps", type=float, default=30.0)
    p.add_argument("--shot-length", type=float, default=5.0, dest="shot_length")
    p.add_argument("--duration", type=float, help="video duration in seconds")
    p.add_argument("--video-id", dest="video_id")
    p.add_argument("--single", action="store_true",
                   help="treat the frames dir as one query image (one-shot document)")
    p.set_defaults(handler=cmd_detect)

    p = subs.add_parser("render", help="concatenate manifest spans into a video")
    p.add_argument("--manifest", required=True)
    p.add_argument("--video", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--fourcc", default="mp4v")
    p.set_defaults(handler=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.handler(args)
    except AdapterError as exc:
        log.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
