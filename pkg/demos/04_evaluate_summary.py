"""Score a predicted summary against annotations with bipartite IOU
matching, then reproduce the headline speedup arithmetic.
"""

import numpy as np

from querysum import GroundTruth, bipartite_match, concept_iou, evaluate, timing_report

gt = GroundTruth(
    video_id="demo",
    shots=(
        (3, frozenset({"person", "street"})),
        (7, frozenset({"car"})),
        (11, frozenset({"person", "dog"})),
    ),
)

predicted = [
    frozenset({"person"}),            # partially hits shot 3 or 11
    frozenset({"car", "street"}),     # splits across shots 3 and 7
    frozenset({"bicycle"}),           # matches nothing
]

weights = np.array([[concept_iou(p, g) for g in gt.concept_sets] for p in predicted])
print("IOU weight matrix (rows = predicted, cols = ground truth):")
for row in weights:
    print("  " + " ".join(f"{w:.3f}" for w in row))

matching, total = bipartite_match(weights)
print(f"\nmaximum matching {matching} with total weight {total:.3f}")

report = evaluate(predicted, gt, process_time_s=100.0, video_time_s=781.0)
print(f"precision = {report.precision:.4f} (weight / {report.s1} predicted)")
print(f"recall    = {report.recall:.4f} (weight / {report.s2} annotated)")
print(f"f1        = {report.f1:.4f}")
print(report.one_line())

print(f"\nspeedup for a 781 s video summarized in 100 s: {timing_report(100.0, 781.0):.2f}x")

pair_report = evaluate(predicted, gt, metric_mode="pair_count")
print(f"pair-count mode: P={pair_report.precision:.4f} R={pair_report.recall:.4f}")
