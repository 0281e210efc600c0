"""Raster file I/O: RGB frames in, debug masks out."""

from __future__ import annotations

import os

import cv2
import numpy as np

from .errors import InputError
from .saliency import DEFAULT_ALPHA, SaliencyMask


def load_rgb(path: str | os.PathLike) -> np.ndarray:
    """Read an image file as an 8-bit RGB array."""
    img = cv2.imread(str(path), cv2.IMREAD_COLOR)
    if img is None:
        raise InputError(f"cannot read image: {path}")
    return cv2.cvtColor(img, cv2.COLOR_BGR2RGB)


def save_rgb(path: str | os.PathLike, frame: np.ndarray) -> None:
    if not cv2.imwrite(str(path), cv2.cvtColor(frame, cv2.COLOR_RGB2BGR)):
        raise InputError(f"cannot write image: {path}")


def write_pgm(path: str | os.PathLike, mask: SaliencyMask) -> None:
    """Write a mask as a binary PGM with 0 (background) / 255 (salient)."""
    data = np.where(mask.mask, 255, 0).astype(np.uint8)
    header = f"P5\n{mask.width} {mask.height}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header + data.tobytes())


def read_mask(path: str | os.PathLike, alpha: float = DEFAULT_ALPHA) -> SaliencyMask:
    """Read a mask image; any pixel brighter than 127 counts as salient.

    ``alpha`` only annotates the returned mask (the threshold is assumed to
    have been applied when the file was written).
    """
    img = cv2.imread(str(path), cv2.IMREAD_GRAYSCALE)
    if img is None:
        raise InputError(f"cannot read mask: {path}")
    return SaliencyMask(mask=img > 127, alpha=alpha)
