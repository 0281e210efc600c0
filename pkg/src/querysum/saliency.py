"""Salient-region extraction in HSV space.

A pixel is salient when ``exp(-(V - S)) > alpha``, i.e. when its value
plane does not dominate its saturation plane by more than ``-ln(alpha)``.
Masks from different frames are compared on a fixed 256x256 grid so the
normalized difference is independent of source resolution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DimensionError

DEFAULT_ALPHA = 0.7
COMPARE_SIZE = 256


@dataclass(frozen=True)
class HsvPlanes:
    """Saturation and value planes of one frame, each in [0, 1]."""

    s_plane: np.ndarray
    v_plane: np.ndarray

    def __post_init__(self):
        if self.s_plane.shape != self.v_plane.shape or self.s_plane.ndim != 2:
            raise DimensionError(
                f"plane shapes differ or are not 2-D: {self.s_plane.shape} vs {self.v_plane.shape}"
            )
        if self.s_plane.size == 0:
            raise DimensionError("zero-area planes")
        for name, plane in (("saturation", self.s_plane), ("value", self.v_plane)):
            if plane.min() < 0.0 or plane.max() > 1.0:
                raise DimensionError(f"{name} plane has entries outside [0, 1]")

    @property
    def height(self) -> int:
        return self.s_plane.shape[0]

    @property
    def width(self) -> int:
        return self.s_plane.shape[1]


@dataclass(frozen=True)
class SaliencyMask:
    """Boolean salient-region mask plus the threshold that produced it."""

    mask: np.ndarray
    alpha: float = DEFAULT_ALPHA

    def __post_init__(self):
        if self.mask.ndim != 2 or self.mask.size == 0:
            raise DimensionError(f"mask must be 2-D and non-empty, got shape {self.mask.shape}")
        if self.mask.dtype != np.bool_:
            raise DimensionError("mask must be boolean")
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")

    @property
    def height(self) -> int:
        return self.mask.shape[0]

    @property
    def width(self) -> int:
        return self.mask.shape[1]

    def coverage(self) -> float:
        """Salient pixels divided by total pixels."""
        return float(self.mask.mean())

    def centroid(self) -> tuple[float, float]:
        """Normalized (x, y) mean of salient pixel centers; (0.5, 0.5) if empty."""
        ys, xs = np.nonzero(self.mask)
        if xs.size == 0:
            return 0.5, 0.5
        return (
            float((xs.mean() + 0.5) / self.width),
            float((ys.mean() + 0.5) / self.height),
        )


def hsv_planes(frame: np.ndarray) -> HsvPlanes:
    """Compute the S and V planes of an 8-bit RGB frame.

    ``S = 1 - min/max`` of the channels (0 where max is 0) and
    ``V = max/255``. The hue plane is never needed and not computed.
    """
    frame = np.asarray(frame)
    if frame.ndim != 3 or frame.shape[2] != 3 or frame.shape[0] == 0 or frame.shape[1] == 0:
        raise DimensionError(f"expected a non-empty HxWx3 frame, got shape {frame.shape}")
    chan = frame.astype(np.float64)
    maxc = chan.max(axis=2)
    minc = chan.min(axis=2)
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.where(maxc > 0, 1.0 - minc / np.where(maxc > 0, maxc, 1.0), 0.0)
    v = maxc / 255.0
    return HsvPlanes(s_plane=np.clip(s, 0.0, 1.0), v_plane=np.clip(v, 0.0, 1.0))


def salient_mask(planes: HsvPlanes, alpha: float = DEFAULT_ALPHA) -> SaliencyMask:
    """Threshold ``exp(-(V - S))`` at ``alpha`` to get the salient region."""
    if not 0.0 < alpha < 1.0:
        raise ConfigError(f"alpha must lie in (0, 1), got {alpha}")
    mask = np.exp(planes.s_plane - planes.v_plane) > alpha
    return SaliencyMask(mask=mask, alpha=alpha)


def resample_nearest(mask: np.ndarray, height: int, width: int) -> np.ndarray:
    """Nearest-neighbor resample of a boolean mask (pixel-center sampling)."""
    if mask.size == 0:
        raise DimensionError("cannot resample a zero-area mask")
    src_h, src_w = mask.shape
    rows = np.minimum(((np.arange(height) + 0.5) * src_h / height).astype(np.intp), src_h - 1)
    cols = np.minimum(((np.arange(width) + 0.5) * src_w / width).astype(np.intp), src_w - 1)
    return mask[np.ix_(rows, cols)]


def mask_difference(a: SaliencyMask, b: SaliencyMask) -> float:
    """Fraction of disagreeing pixels after resampling both masks to 256x256.

    Symmetric, in [0, 1], and zero exactly when the resampled masks agree
    everywhere.
    """
    ra = resample_nearest(a.mask, COMPARE_SIZE, COMPARE_SIZE)
    rb = resample_nearest(b.mask, COMPARE_SIZE, COMPARE_SIZE)
    return float(np.logical_xor(ra, rb).mean())
