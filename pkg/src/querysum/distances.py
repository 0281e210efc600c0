"""Distance functions between the query image and each shot.

Four terms feed the per-shot cumulative distance: the difference in
distinct-class counts, the summed centroid distance of greedily paired
same-class objects, their summed area difference, and the normalized
salient-mask difference. Relevance is ``s = exp(-d)`` so that a zero
distance maps to 1 and large distances decay toward 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InputError
from .ingest import DetectionRecord, ShotRecord, preprocess_frame
from .saliency import DEFAULT_ALPHA, SaliencyMask, hsv_planes, mask_difference, salient_mask

PHI1_MODES = ("count_diff", "symdiff")


@dataclass(frozen=True)
class QueryProfile:
    """Detected objects and salient mask of the query image."""

    detections: tuple[DetectionRecord, ...]
    saliency: SaliencyMask

    @property
    def class_ids(self) -> set[int]:
        return {det.class_id for det in self.detections}


@dataclass(frozen=True)
class DistanceVector:
    """Cumulative distances d and relevance scores s = exp(-d) per shot."""

    d: np.ndarray
    s: np.ndarray

    def __post_init__(self):
        if self.d.shape != self.s.shape or self.d.ndim != 1:
            raise InputError("d and s must be 1-D arrays of equal length")
        if np.any(self.d < 0):
            raise InputError("distances must be nonnegative")
        if not np.allclose(self.s, np.exp(-self.d), rtol=1e-9, atol=1e-12):
            raise InputError("relevance must equal exp(-d)")

    def __len__(self) -> int:
        return self.d.shape[0]


def build_query_profile(
    frame: np.ndarray,
    detections: list[DetectionRecord],
    alpha: float = DEFAULT_ALPHA,
    preprocess: bool = True,
) -> QueryProfile:
    """Run the query image through preprocessing and saliency extraction."""
    if preprocess:
        frame = preprocess_frame(frame)
    mask = salient_mask(hsv_planes(frame), alpha)
    return QueryProfile(detections=tuple(detections), saliency=mask)


def paired_detections(
    q_dets: tuple[DetectionRecord, ...] | list[DetectionRecord],
    v_dets: tuple[DetectionRecord, ...] | list[DetectionRecord],
) -> list[tuple[DetectionRecord, DetectionRecord]]:
    """Greedy nearest-centroid pairing of same-class instances.

    For each class present on both sides, the closest (query, shot) pair is
    matched first, then the next closest among the remainder, until one
    side runs out. Ties break toward lower instance indices, which makes
    the pairing deterministic. Unpaired instances are dropped.
    """
    shared = {d.class_id for d in q_dets} & {d.class_id for d in v_dets}
    pairs: list[tuple[DetectionRecord, DetectionRecord]] = []
    for cid in sorted(shared):
        qs = [d for d in q_dets if d.class_id == cid]
        vs = [d for d in v_dets if d.class_id == cid]
        free_q = list(range(len(qs)))
        free_v = list(range(len(vs)))
        while free_q and free_v:
            best = None
            for qi in free_q:
                for vi in free_v:
                    dist = math.dist(qs[qi].centroid, vs[vi].centroid)
                    key = (dist, qi, vi)
                    if best is None or key < best:
                        best = key
            _, qi, vi = best
            pairs.append((qs[qi], vs[vi]))
            free_q.remove(qi)
            free_v.remove(vi)
    return pairs


def phi1(q: QueryProfile, v: ShotRecord, mode: str = "count_diff") -> float:
    """Distinct-class count difference (or symmetric-difference size)."""
    if mode not in PHI1_MODES:
        raise ConfigError(f"phi1 mode must be one of {PHI1_MODES}, got {mode!r}")
    v_classes = {det.class_id for det in v.detections}
    if mode == "symdiff":
        return float(len(q.class_ids ^ v_classes))
    return float(abs(len(q.class_ids) - len(v_classes)))


def phi2(q: QueryProfile, v: ShotRecord) -> float:
    """Summed centroid distance over paired same-class objects."""
    return sum(math.dist(a.centroid, b.centroid) for a, b in paired_detections(q.detections, v.detections))


def phi3(q: QueryProfile, v: ShotRecord) -> float:
    """Summed area difference over the same pairing phi2 uses.

    Areas are products of normalized box extents, so the division by the
    pixel count is already built in.
    """
    return sum(abs(a.area - b.area) for a, b in paired_detections(q.detections, v.detections))


def phi4(q: QueryProfile, v: ShotRecord) -> float:
    """Normalized salient-mask difference between query and shot."""
    if v.saliency is None:
        raise InputError(f"shot {v.shot_id} has no saliency mask")
    return mask_difference(q.saliency, v.saliency)


def cumulative_distance(q: QueryProfile, v: ShotRecord, phi1_mode: str = "count_diff") -> float:
    return phi1(q, v, phi1_mode) + phi2(q, v) + phi3(q, v) + phi4(q, v)


def distance_vector(
    q: QueryProfile, shots: list[ShotRecord], phi1_mode: str = "count_diff"
) -> DistanceVector:
    """Cumulative distance and relevance for every shot."""
    if not shots:
        raise InputError("cannot compute distances for an empty shot list")
    d = np.array([cumulative_distance(q, shot, phi1_mode) for shot in shots])
    return DistanceVector(d=d, s=np.exp(-d))
