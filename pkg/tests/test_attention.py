import math
import random

import pytest

from focusray import (
    HeuristicWeights,
    RayConfig,
    Roi,
    SceneObject,
    ValidationError,
    Vec3,
    depth_metric,
    importance,
    roi_contains,
    select_focus,
)
from focusray.attention import _roi_mask
from builders import axial_cam, axial_rig

RIG = axial_rig(0.0, 0.0, 0.0)
CAM = axial_cam(0.0, 0.0, 0.0)
ROI = Roi(apex=Vec3(0, 0, 0), axis=Vec3(0, 0, -1), half_angle=math.radians(30.0), z_far=100.0)
RAYS = RayConfig(k=2, n=16, half_angle=math.radians(20.0))
DEFAULT_W = HeuristicWeights(p_rm=0.5, p_d=0.3, p_v=0.2)


def obj(oid, cx, cy, cz, r=1.0, value=0.5):
    return SceneObject(id=oid, center=Vec3(cx, cy, cz), radius=r, value=value)


class TestHeuristicWeights:
    def test_sum_must_be_one(self):
        with pytest.raises(ValidationError):
            HeuristicWeights(p_rm=0.5, p_d=0.3, p_v=0.3)

    def test_negative_rejected(self):
        with pytest.raises(ValidationError):
            HeuristicWeights(p_rm=1.2, p_d=-0.2, p_v=0.0)

    def test_tolerant_of_rounding(self):
        HeuristicWeights(p_rm=0.1, p_d=0.2, p_v=0.7)  # float sum 0.9999...

    def test_degenerate_corners_allowed(self):
        HeuristicWeights(p_rm=1.0, p_d=0.0, p_v=0.0)
        HeuristicWeights(p_rm=0.0, p_d=0.0, p_v=1.0)


class TestDepthMetric:
    def test_at_camera_scores_one(self):
        assert depth_metric(CAM, obj(1, 0, 0, 0), 100.0) == 1.0

    def test_linear_falloff(self):
        assert depth_metric(CAM, obj(1, 0, 0, -25), 100.0) == 0.75
        assert depth_metric(CAM, obj(1, 0, 0, -50), 100.0) == 0.5

    def test_clamps_at_far_limit(self):
        assert depth_metric(CAM, obj(1, 0, 0, -100), 100.0) == 0.0
        assert depth_metric(CAM, obj(1, 0, 0, -400), 100.0) == 0.0

    def test_uses_euclidean_distance(self):
        assert depth_metric(CAM, obj(1, 3, 0, -4), 100.0) == pytest.approx(0.95, abs=1e-12)

    def test_invalid_far_limit(self):
        with pytest.raises(ValidationError):
            depth_metric(CAM, obj(1, 0, 0, -5), 0.0)


class TestImportance:
    def test_weighted_sum(self):
        w = HeuristicWeights(p_rm=0.5, p_d=0.3, p_v=0.2)
        assert importance(w, 1.0, 1.0, 1.0) == pytest.approx(1.0, abs=1e-12)
        assert importance(w, 0.4, 0.6, 0.8) == pytest.approx(0.5 * 0.4 + 0.3 * 0.6 + 0.2 * 0.8, abs=1e-15)

    def test_bounds(self):
        w = DEFAULT_W
        rng = random.Random(5)
        for _ in range(200):
            v = importance(w, rng.random(), rng.random(), rng.random())
            assert 0.0 <= v <= 1.0 + 1e-12

    def test_signal_range_enforced(self):
        with pytest.raises(ValidationError):
            importance(DEFAULT_W, 1.5, 0.0, 0.0)
        with pytest.raises(ValidationError):
            importance(DEFAULT_W, 0.0, -0.1, 0.0)

    def test_rounding_slack_accepted(self):
        importance(DEFAULT_W, 1.0 + 5e-10, 0.0, 0.0)
        importance(DEFAULT_W, -5e-10, 1.0, 1.0)


class TestSelectFocusFixture:
    """Two-sphere scene with a layered occlusion split.

    Sphere 1 swallows the inner ray layer (rm 2/3), sphere 2 takes the rest
    (rm 1/3). With proximity-leaning weights sphere 1 wins; with value-heavy
    weights sphere 2 overtakes it. Expected numbers are frozen from an
    independent per-ray enumeration.
    """

    a = obj(1, 0.0, 0.0, -5.0, r=1.2, value=0.2)
    b = obj(2, 0.0, 0.0, -12.0, r=5.0, value=1.0)

    def test_default_weights_pick_near_sphere(self):
        best, ranked = select_focus([self.a, self.b], RIG, ROI, RAYS, DEFAULT_W)
        assert best is not None
        assert best.object_id == 1
        assert [c.object_id for c in ranked] == [1, 2]
        c1, c2 = ranked
        assert c1.rm == pytest.approx(0.6666666666666665, abs=1e-12)
        assert c2.rm == pytest.approx(0.33333333333333326, abs=1e-12)
        assert c1.d == pytest.approx(0.95, abs=1e-12)
        assert c2.d == pytest.approx(0.88, abs=1e-12)
        assert c1.importance == pytest.approx(0.6583333333333332, abs=1e-12)
        assert c2.importance == pytest.approx(0.6306666666666667, abs=1e-12)

    def test_value_heavy_weights_flip_the_winner(self):
        w = HeuristicWeights(p_rm=0.2, p_d=0.2, p_v=0.6)
        best, ranked = select_focus([self.a, self.b], RIG, ROI, RAYS, w)
        assert best is not None
        assert best.object_id == 2
        imps = {c.object_id: c.importance for c in ranked}
        assert imps[1] == pytest.approx(0.4433333333333333, abs=1e-12)
        assert imps[2] == pytest.approx(0.8426666666666667, abs=1e-12)


class TestSelectFocusCulling:
    def test_behind_camera_never_wins(self):
        front = obj(1, 0, 0, -10, r=1.0, value=0.0)
        behind = obj(2, 0, 0, 10, r=1.0, value=1.0)
        best, ranked = select_focus([front, behind], RIG, ROI, RAYS, DEFAULT_W)
        assert best.object_id == 1
        assert [c.object_id for c in ranked] == [1]

    def test_outside_half_angle_excluded(self):
        axial = obj(1, 0, 0, -10, r=1.0, value=0.0)
        wide = obj(2, 40, 0, -10, r=1.0, value=1.0)
        best, ranked = select_focus([axial, wide], RIG, ROI, RAYS, DEFAULT_W)
        assert best.object_id == 1
        assert [c.object_id for c in ranked] == [1]

    def test_beyond_far_limit_excluded(self):
        near = obj(1, 0, 0, -10, r=1.0, value=0.0)
        far = obj(2, 0, 0, -150, r=2.0, value=1.0)
        best, ranked = select_focus([near, far], RIG, ROI, RAYS, DEFAULT_W)
        assert best.object_id == 1
        assert [c.object_id for c in ranked] == [1]

    def test_empty_scene(self):
        assert select_focus([], RIG, ROI, RAYS, DEFAULT_W) == (None, [])

    def test_everything_culled(self):
        best, ranked = select_focus([obj(1, 0, 0, 50)], RIG, ROI, RAYS, DEFAULT_W)
        assert best is None
        assert ranked == []

    def test_duplicate_ids_rejected(self):
        with pytest.raises(ValidationError):
            select_focus([obj(1, 0, 0, -5), obj(1, 0, 0, -9)], RIG, ROI, RAYS, DEFAULT_W)


class TestSelectFocusOrdering:
    def test_input_permutation_invariance(self):
        rng = random.Random(808)
        scene = [
            obj(oid, rng.uniform(-8, 8), rng.uniform(-8, 8), rng.uniform(-40, -2), rng.uniform(0.5, 3.0), rng.random())
            for oid in range(1, 13)
        ]
        baseline_best, baseline_ranked = select_focus(scene, RIG, ROI, RAYS, DEFAULT_W)
        for _ in range(20):
            shuffled = scene[:]
            rng.shuffle(shuffled)
            best, ranked = select_focus(shuffled, RIG, ROI, RAYS, DEFAULT_W)
            assert best == baseline_best
            assert ranked == baseline_ranked

    def test_candidates_ascend_by_id(self):
        scene = [obj(9, 2, 0, -9), obj(3, -2, 0, -9), obj(5, 0, 2, -9)]
        _, ranked = select_focus(scene, RIG, ROI, RAYS, DEFAULT_W)
        assert [c.object_id for c in ranked] == [3, 5, 9]

    def test_higher_value_wins_symmetric_pair(self):
        # mirror images across the axis: identical rm and d, value decides
        lo = obj(1, 4.0, 0.0, -10.0, r=1.0, value=0.2)
        hi = obj(2, -4.0, 0.0, -10.0, r=1.0, value=0.9)
        best, _ = select_focus([lo, hi], RIG, ROI, RAYS, DEFAULT_W)
        assert best.object_id == 2

    def test_importance_tie_breaks_on_proximity(self):
        w = HeuristicWeights(p_rm=0.0, p_d=0.0, p_v=1.0)
        far = obj(1, 3.0, 0.0, -20.0, r=1.0, value=0.7)
        near = obj(2, 3.0, 0.0, -8.0, r=1.0, value=0.7)
        best, _ = select_focus([far, near], RIG, ROI, RAYS, w)
        assert best.object_id == 2  # same importance, higher d

    def test_full_tie_breaks_on_lower_id(self):
        w = HeuristicWeights(p_rm=0.0, p_d=0.0, p_v=1.0)
        left = obj(9, -4.0, 0.0, -10.0, r=1.0, value=0.7)
        right = obj(3, 4.0, 0.0, -10.0, r=1.0, value=0.7)
        best, _ = select_focus([left, right], RIG, ROI, RAYS, w)
        assert best.object_id == 3


class TestRoiMaskMirror:
    def test_matches_scalar_membership_exactly(self):
        rng = random.Random(1202)
        roi = Roi(apex=Vec3(0.5, -0.25, 1.0), axis=Vec3(0.2, -0.3, -1.0).normalized(),
                  half_angle=math.radians(35.0), z_far=30.0)
        objects = [
            obj(i, rng.uniform(-20, 20), rng.uniform(-20, 20), rng.uniform(-40, 10), rng.uniform(0.1, 5.0))
            for i in range(1, 400)
        ]
        mask = _roi_mask(roi, objects)
        for o, keep in zip(objects, mask.tolist()):
            assert keep == roi_contains(roi, o)
