import math

import numpy as np
import pytest

from conftest import bool_mask, det, shot
from querysum.distances import (
    QueryProfile,
    cumulative_distance,
    distance_vector,
    paired_detections,
    phi1,
    phi2,
    phi3,
    phi4,
)
from querysum.errors import ConfigError, InputError


def profile(detections=(), mask=None):
    if mask is None:
        mask = bool_mask(np.zeros((4, 4), dtype=bool))
    return QueryProfile(detections=tuple(detections), saliency=mask)


class TestPhi1:
    def test_equal_class_counts(self):
        q = profile([det("person"), det("car")])
        v = shot(0, [det("person"), det("car")])
        assert phi1(q, v) == 0.0

    def test_count_difference(self):
        q = profile([det("person"), det("car")])
        v = shot(0, [det("person"), det("car"), det("dog")])
        assert phi1(q, v) == 1.0

    def test_both_empty(self):
        assert phi1(profile(), shot(0)) == 0.0

    def test_distinct_classes_not_instances(self):
        q = profile([det("person"), det("person"), det("person")])
        v = shot(0, [det("person")])
        assert phi1(q, v) == 0.0

    def test_symdiff_mode_sees_disjoint_sets(self):
        q = profile([det("person"), det("car")])
        v = shot(0, [det("dog"), det("cat")])
        assert phi1(q, v) == 0.0
        assert phi1(q, v, mode="symdiff") == 4.0

    def test_unknown_mode_rejected(self):
        with pytest.raises(ConfigError):
            phi1(profile(), shot(0), mode="bogus")


class TestPhi2:
    def test_single_pair_distance(self):
        q = profile([det("person", 0.5, 0.5)])
        v = shot(0, [det("person", 0.5, 0.9)])
        assert phi2(q, v) == pytest.approx(0.4)

    def test_no_shared_classes(self):
        q = profile([det("person")])
        v = shot(0, [det("car")])
        assert phi2(q, v) == 0.0

    def test_identical_detections(self):
        dets = [det("person", 0.2, 0.3), det("car", 0.7, 0.7)]
        assert phi2(profile(dets), shot(0, dets)) == 0.0

    def test_greedy_pairing_takes_closest_first(self):
        q = profile([det("person", 0.0, 0.0), det("person", 1.0, 0.0)])
        v = shot(0, [det("person", 0.1, 0.0), det("person", 0.55, 0.0)])
        # closest pair is (q0, v0) at 0.1; remainder pairs (q1, v1) at 0.45
        assert phi2(q, v) == pytest.approx(0.55)

    def test_unpaired_instances_ignored(self):
        q = profile([det("person", 0.5, 0.5)])
        v = shot(0, [det("person", 0.5, 0.5), det("person", 0.0, 0.0)])
        assert phi2(q, v) == 0.0

    def test_tie_break_is_lower_index(self):
        q = profile([det("person", 0.5, 0.5)])
        v = shot(0, [det("person", 0.5, 0.7), det("person", 0.5, 0.3)])
        pairs = paired_detections(q.detections, v.detections)
        assert pairs == [(q.detections[0], v.detections[0])]


class TestPhi3:
    def test_area_difference(self):
        q = profile([det("person", 0.5, 0.5, 0.5, 0.4)])   # area 0.20
        v = shot(0, [det("person", 0.5, 0.5, 0.25, 0.2)])  # area 0.05
        assert phi3(q, v) == pytest.approx(0.15)

    def test_identical_boxes(self):
        dets = [det("person", 0.5, 0.5, 0.3, 0.3)]
        assert phi3(profile(dets), shot(0, dets)) == 0.0

    def test_no_shared_classes(self):
        assert phi3(profile([det("person")]), shot(0, [det("car")])) == 0.0

    def test_pairing_follows_centroids_not_areas(self):
        q = profile([
            det("person", 0.0, 0.0, 0.1, 0.1),   # area 0.01
            det("person", 1.0, 1.0, 0.2, 0.2),   # area 0.04
        ])
        v = shot(0, [
            det("person", 0.1, 0.0, 0.2, 0.2),   # area 0.04, near q0
            det("person", 0.9, 1.0, 0.1, 0.1),   # area 0.01, near q1
        ])
        # area-greedy pairing would give 0; centroid pairing gives 0.06
        assert phi3(q, v) == pytest.approx(0.06)


class TestPhi4:
    def test_identical_masks(self):
        m = bool_mask([[1, 0], [0, 1]])
        assert phi4(profile(mask=m), shot(0, mask=m)) == 0.0

    def test_complementary_masks(self):
        a = bool_mask([[1, 0], [0, 1]])
        b = bool_mask([[0, 1], [1, 0]])
        assert phi4(profile(mask=a), shot(0, mask=b)) == 1.0

    def test_half_disagreement(self):
        a = bool_mask([[1, 1, 0, 0]])
        b = bool_mask([[1, 0, 0, 1]])
        assert phi4(profile(mask=a), shot(0, mask=b)) == pytest.approx(0.5)

    def test_missing_shot_mask_rejected(self):
        bare = shot(0)
        bare.saliency = None
        with pytest.raises(InputError):
            phi4(profile(), bare)


def _worked_pair():
    """Query/shot pair engineered to hit phi = (1, 0.4, 0.15, 0.5)."""
    q = profile(
        [det("person", 0.5, 0.5, 0.5, 0.4), det("car", 0.2, 0.2, 0.3, 0.3)],
        bool_mask([[1, 1, 0, 0]]),
    )
    v = shot(
        0,
        [
            det("person", 0.5, 0.9, 0.25, 0.2),
            det("car", 0.2, 0.2, 0.3, 0.3),
            det("dog", 0.8, 0.8, 0.1, 0.1),
        ],
        bool_mask([[1, 0, 0, 1]]),
    )
    return q, v


class TestCumulativeDistance:
    def test_identical_features_give_zero(self):
        dets = [det("person", 0.4, 0.4, 0.2, 0.2)]
        mask = bool_mask([[1, 0], [0, 1]])
        assert cumulative_distance(profile(dets, mask), shot(0, dets, mask)) == 0.0

    def test_sum_of_worked_components(self):
        q, v = _worked_pair()
        assert phi1(q, v) == 1.0
        assert phi2(q, v) == pytest.approx(0.4)
        assert phi3(q, v) == pytest.approx(0.15)
        assert phi4(q, v) == pytest.approx(0.5)
        assert cumulative_distance(q, v) == pytest.approx(2.05)

    def test_blank_query_against_blank_shot(self):
        assert cumulative_distance(profile(), shot(0)) == 0.0


class TestDistanceVector:
    def test_relevance_examples(self):
        q, v = _worked_pair()
        same = shot(1, [d for d in q.detections], q.saliency)
        dv = distance_vector(q, [same, v])
        assert dv.d[0] == 0.0 and dv.s[0] == 1.0
        assert dv.s[1] == pytest.approx(math.exp(-2.05), abs=1e-12)
        assert dv.s[1] == pytest.approx(0.12873, abs=5e-6)

    def test_exp_minus_one(self):
        q = profile([det("person")])
        v = shot(0, [det("person"), det("car")])  # phi1 = 1, others 0
        dv = distance_vector(q, [v])
        assert dv.d[0] == pytest.approx(1.0)
        assert dv.s[0] == pytest.approx(0.36788, abs=5e-6)

    def test_monotone_relevance(self):
        q, v = _worked_pair()
        same = shot(1, list(q.detections), q.saliency)
        dv = distance_vector(q, [v, same])
        assert int(np.argmax(dv.s)) == int(np.argmin(dv.d))

    def test_empty_shot_list_rejected(self):
        with pytest.raises(InputError):
            distance_vector(profile(), [])

    def test_all_phis_nonnegative_random(self):
        rng = np.random.default_rng(5)
        names = ["person", "car", "dog", "cat"]
        for _ in range(20):
            mk = lambda: [
                det(rng.choice(names), *rng.uniform(0.2, 0.8, 2), *rng.uniform(0.05, 0.3, 2))
                for _ in range(rng.integers(0, 4))
            ]
            ma = bool_mask(rng.random((8, 8)) > 0.5)
            mb = bool_mask(rng.random((8, 8)) > 0.5)
            q, v = profile(mk(), ma), shot(0, mk(), mb)
            for fn in (phi1, phi2, phi3, phi4):
                assert fn(q, v) >= 0.0
