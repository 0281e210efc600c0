"""Image and frames-directory builders for adapter tests."""

import cv2
import numpy as np
import pytest


def blank_frame(width=320, height=240, gray=235):
    return np.full((height, width, 3), gray, dtype=np.uint8)


def draw_blob(frame, x0, y0, x1, y1, color):
    frame[y0:y1, x0:x1] = color
    return frame


def person_frame():
    """Light background with one saturated red blob (hue bin 0 = person)."""
    frame = blank_frame()
    return draw_blob(frame, 120, 40, 200, 200, (220, 20, 20))


def write_frames(directory, frames_by_index):
    directory.mkdir(parents=True, exist_ok=True)
    for index, frame in frames_by_index.items():
        path = directory / f"{index}.png"
        assert cv2.imwrite(str(path), cv2.cvtColor(frame, cv2.COLOR_RGB2BGR))
    return directory


@pytest.fixture
def person_frames_dir(tmp_path):
    return write_frames(tmp_path / "frames", {75: person_frame()})
