"""Scenario configuration: every tunable in one flat, validated record.

Defaults that matter: tick 16 ms (~60 Hz) and 0.064 m interpupillary
distance. Everything else is a calibration default that scenario config
files may override key by key.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

from .attention import HeuristicWeights
from .comfort import ComfortConfig
from .dynamics import BlurConfig, DynamicsConfig
from .errors import ValidationError
from .rays import RayConfig

# config-file keys that parse as integers; every other field is a float
INT_FIELDS = frozenset({"ray_k", "ray_n"})


@dataclass(frozen=True, slots=True)
class SimConfig:
    """Flat bag of scenario tunables; module invariants are enforced on load."""

    ray_k: int = 4
    ray_n: int = 64
    ray_half_angle_deg: float = 15.0
    roi_half_angle_deg: float = 30.0
    roi_z_far_m: float = 100.0
    p_rm: float = 0.5
    p_d: float = 0.3
    p_v: float = 0.2
    refocus_ms: float = 500.0
    persistence_hold_ms: float = 300.0
    blur_per_meter: float = 0.5
    max_blur: float = 1.0
    tick_ms: float = 16.0
    ipd_m: float = 0.064
    accel_threshold_m_s2: float = 1.0
    min_episode_ms: float = 200.0
    fov_delta_threshold_deg: float = 1.0
    motion_floor_m_s: float = 0.05
    motion_floor_deg_s: float = 5.0
    walk_episode_ms: float = 2000.0
    max_session_ms: float = 1_800_000.0
    jump_distance_min_m: float = 0.5
    target_frame_ms: float = 11.1
    drop_factor: float = 2.0

    def __post_init__(self) -> None:
        if not (isinstance(self.ray_k, int) and self.ray_k >= 1):
            raise ValidationError(f"ray_k must be an integer >= 1, got {self.ray_k!r}")
        if not (isinstance(self.ray_n, int) and self.ray_n >= 1):
            raise ValidationError(f"ray_n must be an integer >= 1, got {self.ray_n!r}")
        for name in ("ray_half_angle_deg", "roi_half_angle_deg"):
            x = getattr(self, name)
            if not 0.0 < x < 90.0:
                raise ValidationError(f"{name} must be in (0, 90), got {x!r}")
        for name in ("roi_z_far_m", "tick_ms", "ipd_m"):
            x = getattr(self, name)
            if not (math.isfinite(x) and x > 0.0):
                raise ValidationError(f"{name} must be positive, got {x!r}")
        # these constructors re-check their own invariants and name the field
        self.heuristic_weights()
        self.dynamics_config()
        self.blur_config()
        self.comfort_config()

    def ray_config(self) -> RayConfig:
        return RayConfig(
            k=self.ray_k,
            n=self.ray_n,
            half_angle=math.radians(self.ray_half_angle_deg),
        )

    def heuristic_weights(self) -> HeuristicWeights:
        return HeuristicWeights(p_rm=self.p_rm, p_d=self.p_d, p_v=self.p_v)

    def dynamics_config(self) -> DynamicsConfig:
        return DynamicsConfig(
            refocus_ms=self.refocus_ms,
            persistence_hold_ms=self.persistence_hold_ms,
        )

    def blur_config(self) -> BlurConfig:
        return BlurConfig(blur_per_meter=self.blur_per_meter, max_blur=self.max_blur)

    def comfort_config(self) -> ComfortConfig:
        return ComfortConfig(
            accel_threshold_m_s2=self.accel_threshold_m_s2,
            min_episode_ms=self.min_episode_ms,
            fov_delta_threshold_deg=self.fov_delta_threshold_deg,
            motion_floor_m_s=self.motion_floor_m_s,
            motion_floor_deg_s=self.motion_floor_deg_s,
            walk_episode_ms=self.walk_episode_ms,
            max_session_ms=self.max_session_ms,
            jump_distance_min_m=self.jump_distance_min_m,
            target_frame_ms=self.target_frame_ms,
            drop_factor=self.drop_factor,
        )


CONFIG_FIELD_NAMES = tuple(f.name for f in fields(SimConfig))
