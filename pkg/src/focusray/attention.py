"""Focus-target selection: score candidates and pick the most important one.

Each candidate object inside the region of interest gets three [0, 1]
signals: rm (ray-cone centrality from `rays`), d (proximity, linear in
distance with a far clamp), and v (designer-assigned value). A convex
combination of the three under configurable weights gives the importance;
the candidate with the highest importance wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ValidationError
from .geometry import MidCamera, Roi, SceneObject, StereoRig, derive_mid_camera
from .rays import RayBundle, RayConfig, ray_bundle, rm_scores

WEIGHT_SUM_TOL = 1e-9
# slack for rm values that overshoot 1 by accumulated rounding
SIGNAL_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class HeuristicWeights:
    """Mixing weights for the importance function; must sum to 1."""

    p_rm: float
    p_d: float
    p_v: float

    def __post_init__(self) -> None:
        for name, w in (("p_rm", self.p_rm), ("p_d", self.p_d), ("p_v", self.p_v)):
            if not (math.isfinite(w) and w >= 0.0):
                raise ValidationError(f"{name} must be finite and >= 0, got {w!r}")
        total = self.p_rm + self.p_d + self.p_v
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValidationError(f"weights must sum to 1, got {total!r}")


@dataclass(frozen=True, slots=True)
class FocusCandidate:
    """One scored candidate: the three signals plus their weighted combination."""

    object_id: int
    rm: float
    d: float
    v: float
    importance: float


def depth_metric(cam: MidCamera, obj: SceneObject, z_far: float) -> float:
    """Proximity score: 1 at the camera, falling linearly to 0 at z_far."""
    if not z_far > 0.0:
        raise ValidationError(f"z_far must be positive, got {z_far!r}")
    dist = obj.center.distance_to(cam.m)
    return 1.0 - min(dist, z_far) / z_far


def importance(weights: HeuristicWeights, rm: float, d: float, v: float) -> float:
    """Weighted sum of the three signals; a convex combination, so in [0, 1]."""
    for name, s in (("rm", rm), ("d", d), ("v", v)):
        if not -SIGNAL_TOL <= s <= 1.0 + SIGNAL_TOL:
            raise ValidationError(f"{name} must be in [0, 1], got {s!r}")
    return weights.p_rm * rm + weights.p_d * d + weights.p_v * v


def _roi_mask(roi: Roi, objects: Sequence[SceneObject]) -> np.ndarray:
    """Vectorized ROI membership over many objects.

    Mirrors geometry.roi_contains / point_cone_distance term for term so the
    two paths make bit-identical decisions.
    """
    cx = np.array([o.center.x for o in objects])
    cy = np.array([o.center.y for o in objects])
    cz = np.array([o.center.z for o in objects])
    rad = np.array([o.radius for o in objects])

    relx = cx - roi.apex.x
    rely = cy - roi.apex.y
    relz = cz - roi.apex.z
    ax, ay, az = roi.axis.x, roi.axis.y, roi.axis.z
    z = relx * ax + rely * ay + relz * az
    rho_sq = (relx * relx + rely * rely + relz * relz) - z * z
    rho = np.sqrt(np.where(rho_sq > 0.0, rho_sq, 0.0))
    sin_t = math.sin(roi.half_angle)
    cos_t = math.cos(roi.half_angle)
    side = rho * cos_t - z * sin_t
    inside = (z >= 0.0) & (side <= 0.0)
    s = rho * sin_t + z * cos_t
    apex_dist = np.sqrt(rho * rho + z * z)
    dist = np.where(inside, 0.0, np.where(s <= 0.0, apex_dist, side))
    return (dist <= rad) & (z - rad <= roi.z_far)


def select_focus(
    scene: Sequence[SceneObject],
    rig: StereoRig,
    roi: Roi,
    ray_cfg: RayConfig,
    weights: HeuristicWeights,
) -> tuple[FocusCandidate | None, list[FocusCandidate]]:
    """Pick the focus object among ROI candidates; also return every candidate.

    Pipeline: cull the scene to the ROI, cast the ray cone once, score each
    candidate, take the argmax of importance. Ties go to the higher proximity
    score, then the lower object id. The candidate list is always in
    ascending object-id order; an empty candidate set yields (None, []).
    """
    ids = [o.id for o in scene]
    if len(set(ids)) != len(ids):
        raise ValidationError("scene contains duplicate object ids")
    if not scene:
        return None, []

    ordered = sorted(scene, key=lambda o: o.id)
    mask = _roi_mask(roi, ordered)
    candidates = [obj for obj, keep in zip(ordered, mask.tolist()) if keep]
    if not candidates:
        return None, []

    cam = derive_mid_camera(rig)
    bundle: RayBundle = ray_bundle(ray_cfg, cam)
    rms = rm_scores(cam.m, bundle, candidates)

    scored: list[FocusCandidate] = []
    best: FocusCandidate | None = None
    # Inline of depth_metric / importance with the same expression trees, so
    # the hot loop skips Vec3 allocation and re-validation of inputs that the
    # Roi, SceneObject, and weight constructors already checked.
    mx, my, mz = cam.m.x, cam.m.y, cam.m.z
    z_far = roi.z_far
    p_rm, p_d, p_v = weights.p_rm, weights.p_d, weights.p_v
    for obj, rm in zip(candidates, rms):
        dx = obj.center.x - mx
        dy = obj.center.y - my
        dz = obj.center.z - mz
        dist = math.sqrt(dx * dx + dy * dy + dz * dz)
        d = 1.0 - min(dist, z_far) / z_far
        imp = p_rm * rm + p_d * d + p_v * obj.value
        cand = FocusCandidate(object_id=obj.id, rm=rm, d=d, v=obj.value, importance=imp)
        scored.append(cand)
        if best is None or cand.importance > best.importance or (
            cand.importance == best.importance and cand.d > best.d
        ):
            best = cand
    return best, scored
