"""Vector and camera math for focus-selection scene queries.

Everything here is a plain immutable value with pure-function operations:
safe to copy between threads, trivially deterministic. All geometry is in
double precision, world units are meters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import GeometryError, ValidationError

UNIT_TOL = 1e-9
ORTHO_TOL = 1e-6


@dataclass(frozen=True, slots=True)
class Vec3:
    """3D vector; components must be finite."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.z)):
            raise ValidationError(f"Vec3 components must be finite, got ({self.x}, {self.y}, {self.z})")

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __mul__(self, s: float) -> "Vec3":
        return Vec3(self.x * s, self.y * s, self.z * s)

    __rmul__ = __mul__

    def __neg__(self) -> "Vec3":
        return Vec3(-self.x, -self.y, -self.z)

    def dot(self, other: "Vec3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "Vec3") -> "Vec3":
        return Vec3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def normalized(self) -> "Vec3":
        n = self.norm()
        if n < 1e-12:
            raise GeometryError("cannot normalize a near-zero vector")
        return Vec3(self.x / n, self.y / n, self.z / n)

    def distance_to(self, other: "Vec3") -> float:
        return (self - other).norm()

    def is_unit(self, tol: float = UNIT_TOL) -> bool:
        return abs(self.norm() - 1.0) <= tol


def _require_unit(v: Vec3, name: str) -> None:
    if not v.is_unit():
        raise ValidationError(f"{name} must be a unit vector (|{name}| = {v.norm()!r})")


@dataclass(frozen=True, slots=True)
class StereoRig:
    """Left/right optical centers plus a shared orthonormal view frame."""

    ol: Vec3
    or_: Vec3
    up: Vec3
    forward: Vec3

    def __post_init__(self) -> None:
        _require_unit(self.forward, "forward")
        _require_unit(self.up, "up")
        if abs(self.forward.dot(self.up)) > ORTHO_TOL:
            raise ValidationError("forward and up must be orthogonal")
        if self.ol == self.or_:
            raise GeometryError("degenerate rig: left and right optical centers coincide")


@dataclass(frozen=True, slots=True)
class MidCamera:
    """Virtual camera at the midpoint of a stereo rig's optical centers."""

    m: Vec3
    forward: Vec3
    up: Vec3

    def __post_init__(self) -> None:
        _require_unit(self.forward, "forward")
        _require_unit(self.up, "up")


@dataclass(frozen=True, slots=True)
class SceneObject:
    """Candidate of visual attention: bounding sphere plus designer-assigned value."""

    id: int
    center: Vec3
    radius: float
    value: float
    label: str = ""

    def __post_init__(self) -> None:
        if not self.radius > 0.0:
            raise ValidationError(f"object {self.id}: radius must be positive, got {self.radius!r}")
        if not 0.0 <= self.value <= 1.0:
            raise ValidationError(f"object {self.id}: value must be in [0, 1], got {self.value!r}")


@dataclass(frozen=True, slots=True)
class Roi:
    """Region of interest: a solid cone from `apex` along `axis`, truncated at `z_far`."""

    apex: Vec3
    axis: Vec3
    half_angle: float
    z_far: float

    def __post_init__(self) -> None:
        _require_unit(self.axis, "axis")
        if not 0.0 < self.half_angle < math.pi / 2.0:
            raise ValidationError(f"half_angle must be in (0, pi/2), got {self.half_angle!r}")
        if not self.z_far > 0.0:
            raise ValidationError(f"z_far must be positive, got {self.z_far!r}")


def derive_mid_camera(rig: StereoRig) -> MidCamera:
    """Midpoint camera of a stereo rig: exact component-wise midpoint, frame copied."""
    m = Vec3(
        (rig.ol.x + rig.or_.x) / 2.0,
        (rig.ol.y + rig.or_.y) / 2.0,
        (rig.ol.z + rig.or_.z) / 2.0,
    )
    return MidCamera(m=m, forward=rig.forward, up=rig.up)


def ray_sphere_intersect(origin: Vec3, direction: Vec3, obj: SceneObject) -> float | None:
    """Smallest non-negative hit distance along a unit-direction ray, or None on miss.

    An origin inside (or on) the sphere counts as a hit at distance zero: the
    object occupies the camera. The quadratic is evaluated in a fixed operand
    order so the vectorized scorer in `rays` stays bitwise identical to it.
    """
    ocx = origin.x - obj.center.x
    ocy = origin.y - obj.center.y
    ocz = origin.z - obj.center.z
    b = ocx * direction.x + ocy * direction.y + ocz * direction.z
    c = ocx * ocx + ocy * ocy + ocz * ocz - obj.radius * obj.radius
    disc = b * b - c
    if disc < 0.0:
        return None
    root = math.sqrt(disc)
    t0 = -b - root
    if t0 >= 0.0:
        return t0
    if -b + root >= 0.0:
        return 0.0
    return None


def point_cone_distance(p: Vec3, apex: Vec3, axis: Vec3, half_angle: float) -> float:
    """Distance from a point to the solid infinite cone (0 when inside).

    Works in the (radial, axial) half-plane: the solid cone is convex there,
    so the nearest boundary point is either the apex or the foot of the
    perpendicular onto the lateral boundary ray.
    """
    rel = p - apex
    z = rel.dot(axis)
    rho_sq = rel.dot(rel) - z * z
    rho = math.sqrt(rho_sq) if rho_sq > 0.0 else 0.0
    sin_t = math.sin(half_angle)
    cos_t = math.cos(half_angle)
    side = rho * cos_t - z * sin_t
    if z >= 0.0 and side <= 0.0:
        return 0.0
    s = rho * sin_t + z * cos_t
    if s <= 0.0:
        # plain sqrt, not hypot: the vectorized ROI filter mirrors this
        # expression tree and must produce bit-identical values
        return math.sqrt(rho * rho + z * z)
    return side


def roi_contains(roi: Roi, obj: SceneObject) -> bool:
    """True when the object's bounding sphere overlaps the truncated ROI cone.

    Partial overlap counts. Truncation: the sphere point closest to the apex
    plane along the axis must lie at axial distance <= z_far.
    """
    dist = point_cone_distance(obj.center, roi.apex, roi.axis, roi.half_angle)
    if dist > obj.radius:
        return False
    z = (obj.center - roi.apex).dot(roi.axis)
    return z - obj.radius <= roi.z_far
