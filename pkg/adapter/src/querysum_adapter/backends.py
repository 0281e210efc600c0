"""Detector backends.

Every backend takes an RGB frame and returns raw detections as
``(class_id, confidence, (x0, y0, x1, y1))`` in pixel coordinates; the
emitter layer owns thresholding, NMS, and normalization.

``SyntheticBackend`` finds saturated color blobs and assigns classes by
hue bin. It is deterministic and needs no model files, which makes it the
default for fixtures and for machines without detector weights.
``TorchvisionBackend`` wraps an 80-class COCO detection model and needs
its weights available locally.
"""

from __future__ import annotations

from dataclasses import dataclass

import cv2
import numpy as np

from .classes import CLASS_IDS, class_id_for_coco_name
from .errors import ModelUnavailableError

RawDetection = tuple[int, float, tuple[float, float, float, float]]

# hue is cv2's H in [0, 180); each 22.5-degree bin gets one class
HUE_BIN_CLASSES = ("person", "car", "dog", "cat", "bottle", "chair", "laptop", "book")


@dataclass(frozen=True)
class SyntheticBackend:
    """Deterministic color-blob detector for model-free pipelines."""

    saturation_floor: int = 128
    value_floor: int = 76
    min_area_px: int = 64

    def detect(self, frame: np.ndarray) -> list[RawDetection]:
        hsv = cv2.cvtColor(frame, cv2.COLOR_RGB2HSV)
        mask = (hsv[:, :, 1] >= self.saturation_floor) & (hsv[:, :, 2] >= self.value_floor)
        count, labels, stats, _ = cv2.connectedComponentsWithStats(
            mask.astype(np.uint8), connectivity=8
        )
        detections: list[RawDetection] = []
        for comp in range(1, count):
            x, y, w, h, area = stats[comp]
            if area < self.min_area_px:
                continue
            member = labels == comp
            hue = float(np.median(hsv[:, :, 0][member]))
            sat = float(hsv[:, :, 1][member].mean()) / 255.0
            val = float(hsv[:, :, 2][member].mean()) / 255.0
            name = HUE_BIN_CLASSES[min(int(hue / 22.5), len(HUE_BIN_CLASSES) - 1)]
            confidence = 0.5 + 0.5 * sat * val
            detections.append(
                (CLASS_IDS[name], confidence, (float(x), float(y), float(x + w), float(y + h)))
            )
        return detections


class TorchvisionBackend:
    """80-class COCO detector behind the torchvision model zoo.

    ``weights_path`` loads a local state dict; without it the model's
    default pretrained weights must already be cached locally (the adapter
    never downloads at run time).
    """

    def __init__(self, model_name: str = "fasterrcnn_resnet50_fpn", weights_path: str | None = None):
        try:
            import torch
            from torchvision.models import detection as tv_detection
        except ImportError as exc:
            raise ModelUnavailableError(f"torch/torchvision not installed: {exc}") from exc
        factory = getattr(tv_detection, model_name, None)
        if factory is None:
            raise ModelUnavailableError(f"unknown torchvision detection model: {model_name}")
        try:
            if weights_path is not None:
                model = factory(weights=None)
                model.load_state_dict(torch.load(weights_path, map_location="cpu"))
                categories = _default_coco_categories()
            else:
                weights_enum = tv_detection.__dict__.get(
                    f"{_camel(model_name)}_Weights", None
                )
                weights = weights_enum.DEFAULT if weights_enum is not None else "DEFAULT"
                model = factory(weights=weights)
                categories = (
                    weights.meta["categories"]
                    if weights_enum is not None
                    else _default_coco_categories()
                )
        except Exception as exc:  # weight resolution is environment-dependent
            raise ModelUnavailableError(f"cannot load weights for {model_name}: {exc}") from exc
        model.eval()
        self._torch = torch
        self._model = model
        self._categories = categories

    def detect(self, frame: np.ndarray) -> list[RawDetection]:
        torch = self._torch
        tensor = torch.from_numpy(frame.astype(np.float32) / 255.0).permute(2, 0, 1)
        with torch.no_grad():
            (output,) = self._model([tensor])
        detections: list[RawDetection] = []
        for label, score, box in zip(
            output["labels"].tolist(), output["scores"].tolist(), output["boxes"].tolist()
        ):
            if not 0 <= label < len(self._categories):
                continue
            class_id = class_id_for_coco_name(self._categories[label])
            if class_id is None:
                continue
            x0, y0, x1, y1 = box
            detections.append((class_id, float(score), (x0, y0, x1, y1)))
        return detections


def _camel(snake: str) -> str:
    return "".join(part.capitalize() for part in snake.split("_"))


def _default_coco_categories() -> list[str]:
    # torchvision's COCO_V1 category list, including the N/A placeholders
    return [
        "__background__", "person", "bicycle", "car", "motorcycle", "airplane", "bus",
        "train", "truck", "boat", "traffic light", "fire hydrant", "N/A", "stop sign",
        "parking meter", "bench", "bird", "cat", "dog", "horse", "sheep", "cow",
        "elephant", "bear", "zebra", "giraffe", "N/A", "backpack", "umbrella", "N/A",
        "N/A", "handbag", "tie", "suitcase", "frisbee", "skis", "snowboard",
        "sports ball", "kite", "baseball bat", "baseball glove", "skateboard",
        "surfboard", "tennis racket", "bottle", "N/A", "wine glass", "cup", "fork",
        "knife", "spoon", "bowl", "banana", "apple", "sandwich", "orange", "broccoli",
        "carrot", "hot dog", "pizza", "donut", "cake", "chair", "couch",
        "potted plant", "bed", "N/A", "dining table", "N/A", "N/A", "toilet", "N/A",
        "tv", "laptop", "mouse", "remote", "keyboard", "cell phone", "microwave",
        "oven", "toaster", "sink", "refrigerator", "N/A", "book", "clock", "vase",
        "scissors", "teddy bear", "hair drier", "toothbrush",
    ]


def make_backend(model: str, weights_path: str | None = None):
    """Backend factory keyed by the config's model identifier."""
    if model == "synthetic":
        return SyntheticBackend()
    if model.startswith("torchvision:"):
        return TorchvisionBackend(model.split(":", 1)[1], weights_path)
    if model == "torchvision":
        return TorchvisionBackend(weights_path=weights_path)
    raise ModelUnavailableError(
        f"unknown model identifier {model!r}; expected 'synthetic' or 'torchvision[:<name>]'"
    )
