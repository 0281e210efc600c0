"""Summary scoring against ground truth.

Predicted and annotated shots form the two sides of a bipartite graph
whose edge weights are concept-set IOUs; precision and recall divide the
maximum matching weight by the predicted and annotated shot counts.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import ConfigError, InputError, SchemaError
from .solver import SummaryManifest

METRIC_MODES = ("weight_sum", "pair_count")


@dataclass(frozen=True)
class GroundTruth:
    """Annotated shots: (shot_id, concept set) pairs with unique ids."""

    video_id: str
    shots: tuple[tuple[int, frozenset[str]], ...]

    def __post_init__(self):
        ids = [sid for sid, _ in self.shots]
        if len(ids) != len(set(ids)):
            raise SchemaError("ground-truth shot_ids must be unique")

    @property
    def concept_sets(self) -> list[frozenset[str]]:
        return [concepts for _, concepts in self.shots]


@dataclass(frozen=True)
class EvalReport:
    precision: float
    recall: float
    f1: float
    matching_weight: float
    s1: int
    s2: int
    process_time_s: float | None = None
    video_time_s: float | None = None
    speedup: float | None = None

    def to_json_dict(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "matching_weight": self.matching_weight,
            "s1": self.s1,
            "s2": self.s2,
            "process_time_s": self.process_time_s,
            "video_time_s": self.video_time_s,
            "speedup": self.speedup,
        }

    def one_line(self) -> str:
        speed = f"{self.speedup:.2f}x" if self.speedup is not None else "n/a"
        return (
            f"P={self.precision:.4f} R={self.recall:.4f} F1={self.f1:.4f} speedup={speed}"
        )


def load_ground_truth(path: str | os.PathLike) -> GroundTruth:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError as exc:
        raise InputError(f"ground truth not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"ground truth is not valid JSON: {exc}") from exc
    try:
        shots = tuple(
            (int(s["shot_id"]), frozenset(str(c) for c in s["concepts"])) for s in doc["shots"]
        )
        return GroundTruth(video_id=str(doc["video_id"]), shots=shots)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed ground-truth document: {exc}") from exc


def load_alias_table(path: str | os.PathLike) -> dict[str, str]:
    """Class-name to concept mapping; identity is assumed for absent names."""
    with open(path, "r", encoding="utf-8") as fh:
        table = json.load(fh)
    if not isinstance(table, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in table.items()
    ):
        raise SchemaError("alias table must be a JSON object mapping strings to strings")
    return table


def concept_iou(a: frozenset[str] | set[str], b: frozenset[str] | set[str]) -> float:
    """Intersection over union of two concept sets; 0 when both are empty."""
    union = len(a | b)
    if union == 0:
        return 0.0
    return len(a & b) / union


def bipartite_match(weights: np.ndarray) -> tuple[list[tuple[int, int]], float]:
    """Maximum-weight matching of a rectangular nonnegative matrix.

    Returns the matched (row, col) pairs with positive weight and the total
    matched weight. Zero-weight pairs are left unmatched since they carry
    nothing.
    """
    weights = np.asarray(weights, dtype=np.float64)
    if weights.ndim != 2:
        raise InputError(f"weight matrix must be 2-D, got shape {weights.shape}")
    if weights.size == 0:
        return [], 0.0
    if np.any(weights < 0):
        raise InputError("weights must be nonnegative")
    rows, cols = linear_sum_assignment(weights, maximize=True)
    matching = [(int(i), int(j)) for i, j in zip(rows, cols) if weights[i, j] > 0]
    total = float(sum(weights[i, j] for i, j in matching))
    return matching, total


def manifest_concepts(
    manifest: SummaryManifest, alias: dict[str, str] | None = None
) -> list[frozenset[str]]:
    """Concept set per predicted shot, mapped through the alias table."""
    alias = alias or {}
    return [
        frozenset(alias.get(name, name) for name in entry.classes) for entry in manifest.entries
    ]


def evaluate(
    predicted: list[frozenset[str]],
    gt: GroundTruth,
    metric_mode: str = "weight_sum",
    process_time_s: float | None = None,
    video_time_s: float | None = None,
) -> EvalReport:
    """Precision / recall / F1 of a predicted summary.

    ``weight_sum`` counts the summed IOU of matched pairs; ``pair_count``
    counts the matched pairs themselves. Either side being empty yields
    all-zero metrics.
    """
    if metric_mode not in METRIC_MODES:
        raise ConfigError(f"metric_mode must be one of {METRIC_MODES}, got {metric_mode!r}")
    s1 = len(predicted)
    s2 = len(gt.shots)
    gt_sets = gt.concept_sets
    if s1 == 0 or s2 == 0:
        matched_weight = 0.0
        matching = []
    else:
        weights = np.array([[concept_iou(p, g) for g in gt_sets] for p in predicted])
        matching, matched_weight = bipartite_match(weights)
    numerator = matched_weight if metric_mode == "weight_sum" else float(len(matching))
    precision = numerator / s1 if s1 else 0.0
    recall = numerator / s2 if s2 else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    speedup = None
    if process_time_s is not None and video_time_s is not None:
        speedup = timing_report(process_time_s, video_time_s)
    return EvalReport(
        precision=precision,
        recall=recall,
        f1=f1,
        matching_weight=matched_weight,
        s1=s1,
        s2=s2,
        process_time_s=process_time_s,
        video_time_s=video_time_s,
        speedup=speedup,
    )


def timing_report(process_time_s: float, video_time_s: float) -> float:
    """How many times faster than real time the summary was produced."""
    if process_time_s <= 0:
        raise InputError(f"process time must be positive, got {process_time_s}")
    return video_time_s / process_time_s
