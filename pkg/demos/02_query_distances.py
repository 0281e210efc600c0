"""Score four hand-built shots against a query image profile.

The cumulative distance sums four terms: class-count difference (phi1),
paired-centroid displacement (phi2), paired-area difference (phi3), and
the salient-mask difference (phi4). Relevance is exp(-d).
"""

import numpy as np

from querysum import DetectionRecord, ShotRecord, distance_vector, phi1, phi2, phi3, phi4
from querysum.distances import QueryProfile
from querysum.saliency import SaliencyMask


def det(class_id, name, cx, cy, w, h):
    return DetectionRecord(class_id=class_id, class_name=name, confidence=0.9, bbox=(cx, cy, w, h))


def blob_mask(row, col):
    m = np.zeros((64, 64), dtype=bool)
    m[row : row + 12, col : col + 12] = True
    return SaliencyMask(mask=m)


person = lambda cx, cy, w=0.2, h=0.5: det(0, "person", cx, cy, w, h)
car = lambda cx, cy, w=0.3, h=0.2: det(10, "car", cx, cy, w, h)
dog = lambda cx, cy: det(20, "dog", cx, cy, 0.15, 0.15)

query = QueryProfile(
    detections=(person(0.4, 0.5), car(0.75, 0.7)),
    saliency=blob_mask(10, 10),
)

shots = [
    ShotRecord(0, 0.0, 5.0, 75, [person(0.4, 0.5), car(0.75, 0.7)], blob_mask(10, 10)),   # clone
    ShotRecord(1, 5.0, 10.0, 225, [person(0.6, 0.5), car(0.75, 0.7)], blob_mask(10, 20)), # person moved
    ShotRecord(2, 10.0, 15.0, 375, [dog(0.5, 0.5)], blob_mask(40, 40)),                   # unrelated
    ShotRecord(3, 15.0, 20.0, 525, [], blob_mask(52, 10)),                                # empty
]

print(f"{'shot':>4} {'phi1':>6} {'phi2':>6} {'phi3':>6} {'phi4':>6} {'d':>7} {'s=exp(-d)':>10}")
dv = distance_vector(query, shots)
for shot, d, s in zip(shots, dv.d, dv.s):
    parts = (phi1(query, shot), phi2(query, shot), phi3(query, shot), phi4(query, shot))
    print(f"{shot.shot_id:>4} " + " ".join(f"{p:6.3f}" for p in parts) + f" {d:7.3f} {s:10.5f}")

best = int(np.argmax(dv.s))
print(f"\nmost relevant shot: {best} (the clone of the query)")
