"""Camera-driven mission planning: coverage geometry, data rates, swarm
sizing, TDD frame budgeting and latency bookkeeping."""

import math
from dataclasses import dataclass
from typing import NamedTuple

from .channel import CoherenceBudget
from .errors import InfeasibleError

__all__ = [
    "CameraSpec",
    "LatencyCheck",
    "MissionSpec",
    "SwarmPlan",
    "altitude_for_gsd",
    "capture_interval",
    "fov_from_altitude",
    "fov_from_gsd",
    "frame_budget",
    "image_area",
    "image_bits",
    "image_rate",
    "latency_budget",
    "swarm_size",
    "video_rate",
]


@dataclass
class CameraSpec:
    """Imaging payload parameters.

    r_px is the across-track pixel count and r_py the along-track one in the
    image-rate formulas; aov_rad is the diagonal angle of view.  Compression
    ratio 1 means raw output.
    """

    r_px: int
    r_py: int
    pixel_size_m: float
    focal_length_m: float
    aov_rad: float
    bits_per_pixel: int
    compression_ratio: float
    fps: float

    def __post_init__(self):
        for name in ("r_px", "r_py", "pixel_size_m", "focal_length_m", "aov_rad", "bits_per_pixel", "fps"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.compression_ratio < 1:
            raise ValueError(f"compression_ratio must be >= 1, got {self.compression_ratio}")


@dataclass
class MissionSpec:
    """Area-coverage mission parameters; overlaps are fractions in [0, 1)."""

    area_m2: float
    gsd_m: float
    speed_m_s: float
    front_overlap: float = 0.0
    side_overlap: float = 0.0
    deadline_s: float = math.inf

    def __post_init__(self):
        for name in ("area_m2", "gsd_m", "speed_m_s", "deadline_s"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not (0 <= self.front_overlap < 1 and 0 <= self.side_overlap < 1):
            raise ValueError("overlaps must lie in [0, 1)")


def altitude_for_gsd(gsd_m: float, focal_length_m: float, pixel_size_m: float) -> float:
    """Flight altitude giving a target ground sampling distance: GSD*FL/PS."""
    if min(gsd_m, focal_length_m, pixel_size_m) <= 0:
        raise ValueError("all inputs must be positive")
    return gsd_m * focal_length_m / pixel_size_m


def fov_from_gsd(gsd_m: float, r_px: int, r_py: int) -> float:
    """Diagonal ground field of view: GSD * sqrt(r_px^2 + r_py^2), meters."""
    if gsd_m <= 0 or r_px < 0 or r_py < 0:
        raise ValueError("gsd must be positive and pixel counts non-negative")
    return gsd_m * math.hypot(r_px, r_py)


def fov_from_altitude(altitude_m: float, aov_rad: float) -> float:
    """Diagonal ground field of view from altitude: 2 H tan(AOV/2), meters."""
    if altitude_m <= 0 or not 0 < aov_rad < math.pi:
        raise ValueError("altitude must be positive and AOV in (0, pi)")
    return 2.0 * altitude_m * math.tan(aov_rad / 2.0)


def image_area(gsd_m: float, r_px: int, r_py: int) -> float:
    """Ground area covered by one image: r_px * r_py * GSD^2, m^2."""
    if min(gsd_m, r_px, r_py) <= 0:
        raise ValueError("all inputs must be positive")
    return r_px * r_py * gsd_m**2


def image_bits(camera: CameraSpec) -> float:
    """Compressed size of one image in bits: r_px * r_py * b / CR."""
    return camera.r_px * camera.r_py * camera.bits_per_pixel / camera.compression_ratio


def capture_interval(gsd_m: float, r_py: int, front_overlap: float, speed_m_s: float) -> float:
    """Seconds between consecutive captures: r_py * GSD * (1 - OL_y) / v."""
    if speed_m_s <= 0:
        raise ValueError("speed must be positive")
    if not 0 <= front_overlap < 1:
        raise ValueError("front overlap must lie in [0, 1)")
    return r_py * gsd_m * (1.0 - front_overlap) / speed_m_s


def image_rate(camera: CameraSpec, gsd_m: float, front_overlap: float, speed_m_s: float) -> float:
    """Sustained uplink rate of continuous image capture, bits/s.

    Equals image_bits / capture_interval = r_px * b * v / (GSD * CR *
    (1 - OL_y)); side overlap is taken as zero here.
    """
    if gsd_m <= 0:
        raise ValueError("gsd must be positive")
    if not 0 <= front_overlap < 1:
        raise ValueError("front overlap must lie in [0, 1)")
    if speed_m_s <= 0:
        raise ValueError("speed must be positive")
    return (
        camera.r_px
        * camera.bits_per_pixel
        * speed_m_s
        / (gsd_m * camera.compression_ratio * (1.0 - front_overlap))
    )


def video_rate(camera: CameraSpec) -> float:
    """Throughput of continuous video, bits/s: r_px * r_py * b * FPS / CR."""
    return (
        camera.r_px
        * camera.r_py
        * camera.bits_per_pixel
        * camera.fps
        / camera.compression_ratio
    )


class SwarmPlan(NamedTuple):
    drones: int
    single_drone_time_s: float


def swarm_size(mission: MissionSpec, camera: CameraSpec, swath_edge: str = "r_py") -> SwarmPlan:
    """Drones needed to sweep the mission area before the deadline.

    swath_edge names the sensor edge lying across track ("r_px" or "r_py");
    the swath is that edge's ground extent reduced by the side overlap.  One
    drone needs area / (swath * v); the swarm count is the deadline ceiling.
    """
    if swath_edge not in ("r_px", "r_py"):
        raise ValueError(f"swath_edge must be 'r_px' or 'r_py', got {swath_edge!r}")
    edge_px = camera.r_px if swath_edge == "r_px" else camera.r_py
    swath_m = edge_px * mission.gsd_m * (1.0 - mission.side_overlap)
    single_time = mission.area_m2 / (swath_m * mission.speed_m_s)
    return SwarmPlan(
        drones=max(1, math.ceil(single_time / mission.deadline_s)),
        single_drone_time_s=single_time,
    )


def frame_budget(
    tau: int,
    num_drones: int,
    ctrl_fraction: float = 0.0,
    ul_data_fraction: float = 0.9,
    dl_pilots: int = 1,
    coherence_time_s: float = math.nan,
    coherence_bw_hz: float = math.nan,
) -> CoherenceBudget:
    """Split a coherence interval of tau symbols into TDD frame sections.

    Uplink pilots get exactly num_drones symbols (orthogonal pilots), the
    downlink pilot block gets dl_pilots (>= 1) symbols and the control block
    floor(ctrl_fraction * tau).  Uplink data receives floor(ul_data_fraction
    * tau), capped by what remains; any leftover goes to downlink data.
    """
    if num_drones < 1:
        raise ValueError("need at least one drone")
    if dl_pilots < 1:
        raise ValueError("need at least one downlink pilot symbol")
    if not 0 <= ctrl_fraction < 1 or not 0 < ul_data_fraction <= 1:
        raise ValueError("fractions must lie in [0, 1)")
    tau_ctrl = math.floor(ctrl_fraction * tau)
    fixed = num_drones + dl_pilots + tau_ctrl
    if tau < fixed + 1:
        raise InfeasibleError(
            f"coherence interval of {tau} symbols cannot fit {num_drones} uplink "
            f"pilots, {dl_pilots} downlink pilot(s), {tau_ctrl} control symbols "
            f"and at least one data symbol"
        )
    tau_ul_data = min(math.floor(ul_data_fraction * tau), tau - fixed)
    tau_dl_data = tau - fixed - tau_ul_data
    return CoherenceBudget(
        t_c=coherence_time_s,
        b_c=coherence_bw_hz,
        tau=tau,
        tau_ctrl=tau_ctrl,
        tau_ul_pilot=num_drones,
        tau_ul_data=tau_ul_data,
        tau_dl_pilot=dl_pilots,
        tau_dl_data=tau_dl_data,
    )


class LatencyCheck(NamedTuple):
    total_s: float
    deadline_s: float | None
    exceeds: bool


def latency_budget(stage_durations_s, deadline_s: float | None = None) -> LatencyCheck:
    """Additive end-to-end latency with an optional deadline flag."""
    stages = list(stage_durations_s)
    if any(s < 0 for s in stages):
        raise ValueError("stage durations must be non-negative")
    total = float(sum(stages))
    exceeds = deadline_s is not None and total > deadline_s
    return LatencyCheck(total_s=total, deadline_s=deadline_s, exceeds=exceeds)
