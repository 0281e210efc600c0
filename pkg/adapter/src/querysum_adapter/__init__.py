"""Detector and renderer sidecar for querysum."""

from .backends import SyntheticBackend, TorchvisionBackend, make_backend
from .classes import CLASS_IDS, CLASS_NAMES, class_id_for_coco_name
from .detect import AdapterConfig, detect_frame, detect_shots, nms
from .errors import AdapterError, ModelUnavailableError, RenderError
from .render import render_summary

__version__ = "0.1.0"
