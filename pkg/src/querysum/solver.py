"""Box-constrained minimization of the selection loss and thresholding.

The loss splits as f - g with f the diagonal quadratic ``lambda1 * Z'PZ``
and g the convex quadratic ``Z'(lambda1*Q + lambda2*R)Z``; each iteration
linearizes g at the current point and solves the remaining separable
quadratic over [0, 1]^n in closed form per coordinate. The loss can only
go down, which the solver asserts with a small numerical slack.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field

import numpy as np

from .distances import DistanceVector
from .errors import ConfigError, InputError, NumericError
from .ingest import ShotRecord
from .objective import LossParams, ObjectiveMatrices, loss

log = logging.getLogger(__name__)

DESCENT_SLACK = 1e-9
THRESHOLD_MODES = ("paper_stddev", "mean_plus_k_sigma")


@dataclass(frozen=True)
class SolverConfig:
    max_iters: int = 100
    tol: float = 1e-6
    init: float = 0.5

    def __post_init__(self):
        if self.max_iters < 1:
            raise ConfigError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.tol <= 0:
            raise ConfigError(f"tol must be positive, got {self.tol}")
        if not 0.0 < self.init < 1.0:
            raise ConfigError(f"init must lie in (0, 1), got {self.init}")


@dataclass(frozen=True)
class SelectionScores:
    """Relaxed per-shot scores plus the solve diagnostics."""

    z: np.ndarray
    iterations_used: int
    final_loss: float
    loss_trace: tuple[float, ...]
    converged: bool

    def __post_init__(self):
        if np.any(self.z < 0) or np.any(self.z > 1):
            raise NumericError("relaxed scores left the [0, 1] box")
        for prev, cur in zip(self.loss_trace, self.loss_trace[1:]):
            if cur > prev + DESCENT_SLACK:
                raise NumericError(f"loss trace increased: {prev} -> {cur}")


@dataclass(frozen=True)
class SelectionMask:
    """Binary selection and the threshold that produced it."""

    selected: np.ndarray
    threshold_used: float
    mode: str = "paper_stddev"

    def count(self) -> int:
        return int(self.selected.sum())


def cccp_minimize(
    M: ObjectiveMatrices, params: LossParams, cfg: SolverConfig | None = None
) -> SelectionScores:
    """Iterate the closed-form per-coordinate update until the step stalls.

    Coordinates with a zero diagonal in f fall back to the sign rule of the
    linearized subproblem (1 when the gradient pushes up, else 0). When
    ``max_iters`` runs out the best iterate is returned with
    ``converged=False`` rather than raising.
    """
    cfg = cfg or SolverConfig()
    n = M.n
    A = params.lambda1 * M.Q + params.lambda2 * np.diag(M.r)
    denom = 2.0 * params.lambda1 * M.p
    positive = denom > 0
    safe_denom = np.where(positive, denom, 1.0)
    z = np.full(n, cfg.init)
    trace = [loss(M, params, z)]
    iterations = 0
    converged = False
    for _ in range(cfg.max_iters):
        c = 2.0 * (A @ z)
        z_next = np.where(positive, np.clip(c / safe_denom, 0.0, 1.0), (c > 0).astype(np.float64))
        step = float(np.max(np.abs(z_next - z))) if n else 0.0
        z = z_next
        iterations += 1
        current = loss(M, params, z)
        if not np.isfinite(current):
            raise NumericError("loss became non-finite during the solve")
        if current > trace[-1] + DESCENT_SLACK:
            raise NumericError(f"descent violated: {trace[-1]} -> {current}")
        trace.append(current)
        if step < cfg.tol:
            converged = True
            break
    if not converged:
        log.warning("solver hit max_iters=%d without converging (tol=%g)", cfg.max_iters, cfg.tol)
    return SelectionScores(
        z=z,
        iterations_used=iterations,
        final_loss=trace[-1],
        loss_trace=tuple(trace),
        converged=converged,
    )


def adaptive_threshold(
    scores: SelectionScores, mode: str = "paper_stddev", k: float = 0.0
) -> SelectionMask:
    """Turn relaxed scores into a binary mask.

    ``paper_stddev`` thresholds at the population standard deviation of the
    scores; ``mean_plus_k_sigma`` thresholds at ``mean + k * std``. With
    all-equal scores both thresholds degenerate (std 0) and every score
    above the resulting value is kept, so all-0.5 scores select everything.
    """
    if mode not in THRESHOLD_MODES:
        raise ConfigError(f"threshold mode must be one of {THRESHOLD_MODES}, got {mode!r}")
    z = scores.z
    sigma = float(z.std())
    tau = sigma if mode == "paper_stddev" else float(z.mean()) + k * sigma
    return SelectionMask(selected=z > tau, threshold_used=tau, mode=mode)


@dataclass(frozen=True)
class ManifestEntry:
    shot_id: int
    t_start: float
    t_end: float
    score: float | None = None
    distance: float | None = None
    relevance: float | None = None
    classes: tuple[str, ...] = ()


@dataclass(frozen=True)
class SummaryManifest:
    """Selected shots in temporal order plus run provenance."""

    video_id: str
    n_shots: int
    entries: tuple[ManifestEntry, ...]
    threshold_mode: str = "paper_stddev"
    threshold_value: float | None = None
    solver: dict | None = None
    config: dict = field(default_factory=dict)

    @property
    def shot_ids(self) -> list[int]:
        return [e.shot_id for e in self.entries]

    def to_json_dict(self) -> dict:
        return {
            "video_id": self.video_id,
            "n_shots": self.n_shots,
            "threshold": {"mode": self.threshold_mode, "value": self.threshold_value},
            "solver": self.solver,
            "config": self.config,
            "selected": [
                {
                    "shot_id": e.shot_id,
                    "t_start": e.t_start,
                    "t_end": e.t_end,
                    "score": e.score,
                    "distance": e.distance,
                    "relevance": e.relevance,
                    "classes": list(e.classes),
                }
                for e in self.entries
            ],
        }

    def write(self, path: str | os.PathLike) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def from_json_dict(cls, doc: dict) -> "SummaryManifest":
        try:
            entries = tuple(
                ManifestEntry(
                    shot_id=int(e["shot_id"]),
                    t_start=float(e["t_start"]),
                    t_end=float(e["t_end"]),
                    score=e.get("score"),
                    distance=e.get("distance"),
                    relevance=e.get("relevance"),
                    classes=tuple(e.get("classes", ())),
                )
                for e in doc["selected"]
            )
            return cls(
                video_id=doc["video_id"],
                n_shots=int(doc["n_shots"]),
                entries=entries,
                threshold_mode=doc.get("threshold", {}).get("mode", "paper_stddev"),
                threshold_value=doc.get("threshold", {}).get("value"),
                solver=doc.get("solver"),
                config=doc.get("config", {}),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed manifest document: {exc}") from exc

    @classmethod
    def read(cls, path: str | os.PathLike) -> "SummaryManifest":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                return cls.from_json_dict(json.load(fh))
        except FileNotFoundError as exc:
            raise InputError(f"manifest not found: {path}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"manifest is not valid JSON: {exc}") from exc


def select_summary(
    shots: list[ShotRecord],
    mask: SelectionMask,
    scores: SelectionScores | None = None,
    dv: DistanceVector | None = None,
    video_id: str = "",
    config: dict | None = None,
) -> SummaryManifest:
    """Filter shots through the mask into a manifest, preserving time order."""
    if len(shots) != mask.selected.shape[0]:
        raise InputError(f"mask length {mask.selected.shape[0]} != shot count {len(shots)}")
    order = sorted(range(len(shots)), key=lambda i: shots[i].t_start)
    entries = []
    for i in order:
        if not mask.selected[i]:
            continue
        shot = shots[i]
        entries.append(
            ManifestEntry(
                shot_id=shot.shot_id,
                t_start=shot.t_start,
                t_end=shot.t_end,
                score=float(scores.z[i]) if scores is not None else None,
                distance=float(dv.d[i]) if dv is not None else None,
                relevance=float(dv.s[i]) if dv is not None else None,
                classes=tuple(sorted({d.class_name for d in shot.detections})),
            )
        )
    if not entries:
        log.warning("empty summary: no score exceeded the threshold %.6g", mask.threshold_used)
    solver_info = None
    if scores is not None:
        solver_info = {
            "iterations": scores.iterations_used,
            "final_loss": scores.final_loss,
            "converged": scores.converged,
        }
    return SummaryManifest(
        video_id=video_id,
        n_shots=len(shots),
        entries=tuple(entries),
        threshold_mode=mask.mode,
        threshold_value=float(mask.threshold_used),
        solver=solver_info,
        config=dict(config or {}),
    )
