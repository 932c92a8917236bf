"""focusray: deterministic dynamic-focus selection for stereo HMD rigs.

A headless, engine-agnostic library plus CLI covering four jobs: selecting
the focus object in a 3D scene via a weighted metric-ray cone and an
importance heuristic, smoothing per-tick selections into a continuous
focal-distance signal, auditing recorded camera trajectories against
comfort guidelines, and scoring simulator sickness questionnaires.
"""

from .attention import FocusCandidate, HeuristicWeights, depth_metric, importance, select_focus
from .comfort import (
    ComfortConfig,
    ComfortFinding,
    ComfortReport,
    ComfortRule,
    TrajectorySample,
    analyze_trajectory,
    detect_acceleration_episodes,
    detect_frame_drops,
)
from .config import SimConfig
from .dynamics import (
    BlurConfig,
    DofParams,
    DynamicsConfig,
    FocusSelection,
    FocusState,
    Transition,
    apply_selection,
    blur_amount,
    dof_params,
    step,
)
from .errors import FocusrayError, GeometryError, ParseError, ValidationError
from .io_formats import (
    TimelineRow,
    format_real,
    parse_config,
    parse_profile,
    parse_scene,
    parse_ssq_response,
    parse_trajectory,
    render_comfort_section,
    render_config_section,
    render_document,
    render_ssq_section,
    render_timeline_section,
    write_document,
)
from .geometry import (
    MidCamera,
    Roi,
    SceneObject,
    StereoRig,
    Vec3,
    derive_mid_camera,
    point_cone_distance,
    ray_sphere_intersect,
    roi_contains,
)
from .rays import (
    GOLDEN_ANGLE,
    RayBundle,
    RayConfig,
    WeightedRay,
    compute_rm,
    generate_metric_rays,
    layer_weight,
    ray_bundle,
)
from .simulate import level_for_score, resample, rig_from_pose, run_scenario, score_ssq_files
from .ssq import (
    DISORIENTATION_SYMPTOMS,
    NAUSEA_SYMPTOMS,
    OCULOMOTOR_SYMPTOMS,
    Profile,
    ProtocolReport,
    ProtocolSession,
    SsqDelta,
    SsqResponse,
    SsqScore,
    SYMPTOM_NAMES,
    protocol_report,
    score_questionnaire,
)

__version__ = "0.1.0"

__all__ = [
    "BlurConfig",
    "ComfortConfig",
    "ComfortFinding",
    "ComfortReport",
    "ComfortRule",
    "DISORIENTATION_SYMPTOMS",
    "DofParams",
    "DynamicsConfig",
    "FocusCandidate",
    "FocusSelection",
    "FocusState",
    "FocusrayError",
    "GOLDEN_ANGLE",
    "GeometryError",
    "HeuristicWeights",
    "MidCamera",
    "NAUSEA_SYMPTOMS",
    "OCULOMOTOR_SYMPTOMS",
    "ParseError",
    "Profile",
    "ProtocolReport",
    "ProtocolSession",
    "RayBundle",
    "RayConfig",
    "Roi",
    "SYMPTOM_NAMES",
    "SceneObject",
    "SimConfig",
    "SsqDelta",
    "SsqResponse",
    "SsqScore",
    "StereoRig",
    "TimelineRow",
    "TrajectorySample",
    "Transition",
    "ValidationError",
    "Vec3",
    "WeightedRay",
    "analyze_trajectory",
    "apply_selection",
    "blur_amount",
    "compute_rm",
    "depth_metric",
    "derive_mid_camera",
    "detect_acceleration_episodes",
    "detect_frame_drops",
    "dof_params",
    "format_real",
    "generate_metric_rays",
    "importance",
    "layer_weight",
    "level_for_score",
    "parse_config",
    "parse_profile",
    "parse_scene",
    "parse_ssq_response",
    "parse_trajectory",
    "point_cone_distance",
    "protocol_report",
    "ray_bundle",
    "ray_sphere_intersect",
    "render_comfort_section",
    "render_config_section",
    "render_document",
    "render_ssq_section",
    "render_timeline_section",
    "resample",
    "rig_from_pose",
    "roi_contains",
    "run_scenario",
    "score_questionnaire",
    "score_ssq_files",
    "select_focus",
    "step",
    "write_document",
]
