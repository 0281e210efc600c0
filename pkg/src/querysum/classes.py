"""The fixed 80-class detection vocabulary.

Detections exchanged through the JSON interface must use these ids and
names; ``class_id`` is the index into :data:`CLASS_NAMES`.
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

NUM_CLASSES = len(CLASS_NAMES)

CLASS_IDS = {name: i for i, name in enumerate(CLASS_NAMES)}


def class_name(class_id: int) -> str:
    """Return the canonical name for ``class_id``, or raise ``IndexError``."""
    if not 0 <= class_id < NUM_CLASSES:
        raise IndexError(f"class_id {class_id} outside [0, {NUM_CLASSES - 1}]")
    return CLASS_NAMES[class_id]
