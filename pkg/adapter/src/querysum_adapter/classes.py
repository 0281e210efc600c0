"""The 80-class vocabulary of the detections JSON contract.

Must stay identical to the consumer's table; the test suite asserts the
two copies match. Detector-native COCO names map onto it via
:data:`COCO_NAME_ALIASES` (spaces become underscores first).
"""

CLASS_NAMES = (
    "person", "umbrella", "tie", "backpack", "handbag",
    "suitcase", "bicycle", "motorcycle", "bus", "truck",
    "car", "airplane", "train", "boat", "traffic_light",
    "stop_sign", "bench", "fire_hydrant", "parking_meter", "bird",
    "dog", "sheep", "elephant", "zebra", "cat",
    "horse", "cow", "bear", "giraffe", "frisbee",
    "snowboard", "kite", "baseball_glove", "surfboard", "skis",
    "sports_ball", "baseball_bat", "skateboard", "tannis_racket", "bottle",
    "cup", "knife", "bowl", "wine_glass", "fork",
    "spoon", "banana", "sandwich", "broccoli", "hot_dog",
    "donut", "apple", "orange", "carrot", "pizza",
    "cake", "chair", "potted_plant", "dining_table", "couch",
    "bed", "tv", "toilet", "mouse", "keyboard",
    "laptop", "remote", "cell_phone", "toaster", "microwave",
    "refrigerator", "oven", "sink", "book", "vase",
    "teddy_bear", "toothbrush", "clock", "scissors", "hair_drier",
)

CLASS_IDS = {name: i for i, name in enumerate(CLASS_NAMES)}

COCO_NAME_ALIASES = {"tennis_racket": "tannis_racket"}


def class_id_for_coco_name(name: str) -> int | None:
    """Map a detector-native COCO category name to a table id, or None."""
    key = name.strip().lower().replace(" ", "_")
    key = COCO_NAME_ALIASES.get(key, key)
    return CLASS_IDS.get(key)
