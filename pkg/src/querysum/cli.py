"""Command-line driver.

Subcommands: summarize, score, evaluate, saliency, inspect, timeline.
Exit codes: 0 success, 2 input/config error, 3 numeric error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import RunConfig, load_config
from .errors import InputError, NumericError, QuerysumError
from .evaluation import evaluate, load_alias_table, load_ground_truth, manifest_concepts
from .images import load_rgb, write_pgm
from .ingest import preprocess_frame
from .pipeline import (
    build_query,
    prepare_shots,
    run_summarize,
    write_timeline_csv,
    write_timeline_svg,
)
from .saliency import hsv_planes, salient_mask
from .solver import SummaryManifest

log = logging.getLogger("querysum")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3


def _add_config_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="JSON config file; flags override its values")
    sub.add_argument("--lambda1", type=float, dest="lambda1")
    sub.add_argument("--lambda2", type=float, dest="lambda2")
    sub.add_argument("--alpha", type=float)
    sub.add_argument("--shot-length", type=float, dest="shot_length_s")
    sub.add_argument("--threshold-mode", dest="threshold_mode",
                     choices=("paper_stddev", "mean_plus_k_sigma"))
    sub.add_argument("--k", type=float)
    sub.add_argument("--phi1-mode", dest="phi1_mode", choices=("count_diff", "symdiff"))
    sub.add_argument("--metric-mode", dest="metric_mode", choices=("weight_sum", "pair_count"))
    sub.add_argument("--relevance-mode", dest="relevance_mode",
                     choices=("similarity", "raw_distance"))
    sub.add_argument("--max-iters", type=int, dest="solver_max_iters")
    sub.add_argument("--tol", type=float, dest="solver_tol")
    sub.add_argument("--init", type=float, dest="solver_init")
    sub.add_argument("--video-duration", type=float, dest="video_duration_s")
    sub.add_argument("--detections")
    sub.add_argument("--frames-dir", dest="frames_dir")
    sub.add_argument("--masks-dir", dest="masks_dir")
    sub.add_argument("--query-image", dest="query_image")
    sub.add_argument("--query-mask", dest="query_mask")
    sub.add_argument("--query-detections", dest="query_detections")
    sub.add_argument("--ground-truth", dest="ground_truth")
    sub.add_argument("--alias-table", dest="alias_table")
    sub.add_argument("--out-dir", dest="output_dir")


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    keys = (
        "lambda1", "lambda2", "alpha", "shot_length_s", "threshold_mode", "k",
        "phi1_mode", "metric_mode", "relevance_mode", "solver_max_iters",
        "solver_tol", "solver_init", "video_duration_s", "detections",
        "frames_dir", "masks_dir", "query_image", "query_mask",
        "query_detections", "ground_truth", "alias_table", "output_dir",
    )
    overrides = {k: getattr(args, k, None) for k in keys}
    return load_config(args.config, overrides)


def cmd_summarize(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    if cfg.output_dir is None:
        cfg.output_dir = "out"
    result = run_summarize(cfg)
    print(
        f"{result.video_id}: selected {result.mask.count()}/{len(result.shots)} shots "
        f"(threshold {result.mask.threshold_used:.6g}, {result.scores.iterations_used} iterations, "
        f"{result.process_time_s:.3f}s, speedup {result.speedup:.2f}x)"
    )
    print(f"artifacts written to {cfg.output_dir}")
    return EXIT_OK


def cmd_score(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    if cfg.output_dir is None:
        cfg.output_dir = "out"
    result = run_summarize(cfg, write_manifest=False)
    print(
        f"{result.video_id}: iterations={result.scores.iterations_used} "
        f"final_loss={result.scores.final_loss:.6g} converged={result.scores.converged} "
        f"threshold={result.mask.threshold_used:.6g}"
    )
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    cfg = _config_from_args(args)
    manifest = SummaryManifest.read(args.manifest)
    if cfg.ground_truth is None:
        raise InputError("a ground-truth JSON path is required")
    gt = load_ground_truth(cfg.ground_truth)
    alias = load_alias_table(cfg.alias_table) if cfg.alias_table else None
    process_time = video_time = None
    if args.report:
        with open(args.report, "r", encoding="utf-8") as fh:
            report_doc = json.load(fh)
        process_time = report_doc.get("process_time_s")
        video_time = report_doc.get("video_time_s")
    report = evaluate(
        manifest_concepts(manifest, alias),
        gt,
        metric_mode=cfg.metric_mode,
        process_time_s=process_time,
        video_time_s=video_time,
    )
    out = Path(args.out) if args.out else None
    if out is not None:
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(report.to_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    print(report.one_line())
    return EXIT_OK


def cmd_saliency(args: argparse.Namespace) -> int:
    frame = load_rgb(args.image)
    if not args.raw:
        frame = preprocess_frame(frame)
    mask = salient_mask(hsv_planes(frame), args.alpha)
    write_pgm(args.out, mask)
    print(f"{args.out}: {mask.width}x{mask.height}, coverage {mask.coverage():.4f}")
    return EXIT_OK


def cmd_inspect(args: argparse.Namespace) -> int:
    from .distances import distance_vector
    from .ingest import assemble_features
    from .objective import build_matrices

    cfg = _config_from_args(args)
    doc, shots = prepare_shots(cfg)
    query = build_query(cfg)
    X = assemble_features(shots)
    dv = distance_vector(query, shots, cfg.phi1_mode)
    M = build_matrices(X, dv, cfg.relevance_mode)
    dump = {
        "video_id": doc.video_id,
        "n": M.n,
        "p_diag": M.p.tolist(),
        "Q": M.Q.tolist(),
        "r_diag": M.r.tolist(),
        "d": dv.d.tolist(),
        "s": dv.s.tolist(),
    }
    text = json.dumps(dump, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return EXIT_OK


def cmd_timeline(args: argparse.Namespace) -> int:
    manifest = SummaryManifest.read(args.manifest)
    gt = load_ground_truth(args.ground_truth)
    gt_ids = {sid for sid, _ in gt.shots}
    n_shots = max([manifest.n_shots] + [sid + 1 for sid in gt_ids])
    write_timeline_csv(Path(args.out), manifest, gt_ids, n_shots)
    if args.svg:
        write_timeline_svg(Path(args.svg), manifest, gt_ids, n_shots)
    print(f"timeline over {n_shots} shots written to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="querysum",
        description="Query-image conditioned keyframe selection for video summarization",
    )
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("summarize", help="run the full pipeline and write a manifest")
    _add_config_flags(p)
    p.set_defaults(handler=cmd_summarize)

    p = subs.add_parser("score", help="run the pipeline up to shot scoring")
    _add_config_flags(p)
    p.set_defaults(handler=cmd_score)

    p = subs.add_parser("evaluate", help="score a manifest against ground truth")
    _add_config_flags(p)
    p.add_argument("--manifest", required=True)
    p.add_argument("--report", help="run report JSON to pull timing from")
    p.add_argument("--out", help="where to write the evaluation report JSON")
    p.set_defaults(handler=cmd_evaluate)

    p = subs.add_parser("saliency", help="extract a salient-region mask from one image")
    p.add_argument("--image", required=True)
    p.add_argument("--out", required=True, help="output PGM path")
    p.add_argument("--alpha", type=float, default=0.7)
    p.add_argument("--raw", action="store_true", help="skip preprocessing")
    p.set_defaults(handler=cmd_saliency)

    p = subs.add_parser("inspect", help="dump P, Q, R and distances for a small run")
    _add_config_flags(p)
    p.add_argument("--out", help="write the dump here instead of stdout")
    p.set_defaults(handler=cmd_inspect)

    p = subs.add_parser("timeline", help="emit a predicted-vs-ground-truth shot timeline")
    p.add_argument("--manifest", required=True)
    p.add_argument("--ground-truth", required=True, dest="ground_truth")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--svg", help="optional SVG rendering")
    p.set_defaults(handler=cmd_timeline)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.handler(args)
    except NumericError as exc:
        log.error("numeric failure: %s", exc)
        return EXIT_NUMERIC
    except (QuerysumError, FileNotFoundError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
