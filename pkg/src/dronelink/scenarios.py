"""Scenario files: flat key-value text with dotted namespaces.

A scenario line is ``key = value`` with ``#`` comments; unknown keys are
rejected.  Units are part of the key names.  The bundled scenarios live as
package data and can also be loaded from arbitrary paths.
"""

import hashlib
import math
from dataclasses import dataclass, field
from importlib import resources

from .constants import dbm_per_hz_to_w_per_hz
from .errors import ConfigError
from .geometry import ShellSpec
from .mimo import LinkBudget
from .mission import CameraSpec, MissionSpec
from .sim import ExperimentConfig

__all__ = [
    "BUILTIN_SCENARIOS",
    "KNOWN_KEYS",
    "Scenario",
    "load_scenario",
    "parse_scenario",
    "scenario_names",
]

# key -> (python type, required)
KNOWN_KEYS: dict[str, tuple[type, bool]] = {
    "name": (str, True),
    "provenance": (str, False),
    "link.carrier_hz": (float, True),
    "link.bandwidth_hz": (float, True),
    "link.noise_density_dbm_hz": (float, True),
    "link.data_snr_db": (float, True),
    "link.pilot_snr_db": (float, False),
    "link.kappa": (float, False),
    "link.chi_wc": (float, False),
    "link.coherence_bw_hz": (float, True),
    "drone.count": (int, True),
    "drone.speed_m_s": (float, True),
    "drone.power_w": (float, True),
    "drone.antenna": (str, False),
    "array.size": (int, False),
    "array.spacing_wavelengths": (float, False),
    "array.element": (str, False),
    "array.orientation": (str, False),
    "array.orientation_seed": (int, False),
    "array.identical_roll_deg": (float, False),
    "array.identical_pitch_deg": (float, False),
    "array.identical_yaw_deg": (float, False),
    "shell.inner_m": (float, False),
    "shell.outer_m": (float, False),
    "shell.min_elevation_deg": (float, False),
    "frame.ctrl_fraction": (float, False),
    "frame.ul_data_fraction": (float, False),
    "frame.dl_pilots": (int, False),
    "camera.r_px": (int, False),
    "camera.r_py": (int, False),
    "camera.pixel_size_m": (float, False),
    "camera.focal_length_m": (float, False),
    "camera.aov_deg": (float, False),
    "camera.bits_per_pixel": (int, False),
    "camera.compression_ratio": (float, False),
    "camera.fps": (float, False),
    "survey.r_px": (int, False),
    "survey.r_py": (int, False),
    "survey.pixel_size_m": (float, False),
    "survey.focal_length_m": (float, False),
    "survey.aov_deg": (float, False),
    "survey.bits_per_pixel": (int, False),
    "survey.compression_ratio": (float, False),
    "survey.fps": (float, False),
    "mission.area_m2": (float, False),
    "mission.gsd_m": (float, False),
    "mission.speed_m_s": (float, False),
    "mission.front_overlap": (float, False),
    "mission.side_overlap": (float, False),
    "mission.deadline_s": (float, False),
    "mission.swath_edge": (str, False),
    "sim.trials": (int, False),
    "sim.seed": (int, False),
    "sim.power_cap_w": (float, False),
    "sim.pattern_normalization": (str, False),
    "design.published_m": (int, False),
    "design.published_range_m": (float, False),
    "design.published_sum_bps": (float, False),
    "design.published_tau": (int, False),
}

_DEFAULTS = {
    "link.pilot_snr_db": 0.0,
    "link.kappa": 1.0,
    "link.chi_wc": 0.1,
    "drone.antenna": "halfwave_dipole",
    "array.size": 100,
    "array.spacing_wavelengths": 0.5,
    "array.element": "cross_dipole_linear",
    "array.orientation": "identical",
    "array.orientation_seed": 0,
    "array.identical_roll_deg": 0.0,
    "array.identical_pitch_deg": 0.0,
    "array.identical_yaw_deg": 0.0,
    "shell.inner_m": 20.0,
    "shell.outer_m": 500.0,
    "frame.ctrl_fraction": 0.0,
    "frame.ul_data_fraction": 0.9,
    "frame.dl_pilots": 1,
    "mission.front_overlap": 0.0,
    "mission.side_overlap": 0.0,
    "mission.swath_edge": "r_py",
    "sim.trials": 10_000,
    "sim.seed": 0,
    "sim.power_cap_w": 0.1,
    "sim.pattern_normalization": "directivity",
}


@dataclass
class Scenario:
    """Validated scenario: effective key-value map plus override trail."""

    values: dict = field(default_factory=dict)
    overrides: tuple = ()

    @property
    def name(self) -> str:
        return self.values.get("name", "unnamed")

    @property
    def provenance(self) -> str:
        return self.values.get("provenance", "")

    def get(self, key: str, default=None):
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown scenario key {key!r}")
        if key in self.values:
            return self.values[key]
        if key in _DEFAULTS:
            return _DEFAULTS[key]
        return default

    def require(self, key: str):
        value = self.get(key)
        if value is None:
            raise ConfigError(f"scenario {self.name!r} is missing key {key!r}")
        return value

    def with_overrides(self, overrides) -> "Scenario":
        values = dict(self.values)
        applied = list(self.overrides)
        for item in overrides:
            if "=" not in item:
                raise ConfigError(f"override {item!r} is not of the form key=value")
            key, raw = item.split("=", 1)
            key, raw = key.strip(), raw.strip()
            values[key] = _coerce(key, raw)
            applied.append(f"{key}={raw}")
        return Scenario(values=values, overrides=tuple(applied))

    def digest(self) -> str:
        """Stable hash of the effective scenario (defaults included)."""
        lines = []
        for key in sorted(KNOWN_KEYS):
            value = self.get(key)
            if value is not None:
                lines.append(f"{key}={value!r}")
        return hashlib.sha256("\n".join(lines).encode()).hexdigest()[:16]

    # typed builders -------------------------------------------------------

    def noise_density_w_hz(self) -> float:
        return dbm_per_hz_to_w_per_hz(self.require("link.noise_density_dbm_hz"))

    def shell(self) -> ShellSpec:
        return ShellSpec(self.get("shell.inner_m"), self.get("shell.outer_m"))

    def camera(self, namespace: str = "camera") -> CameraSpec:
        def req(suffix):
            value = self.get(f"{namespace}.{suffix}")
            if value is None:
                raise ConfigError(
                    f"scenario {self.name!r} has no {namespace!r} camera ({namespace}.{suffix} missing)"
                )
            return value

        return CameraSpec(
            r_px=req("r_px"),
            r_py=req("r_py"),
            pixel_size_m=req("pixel_size_m"),
            focal_length_m=req("focal_length_m"),
            aov_rad=math.radians(req("aov_deg")),
            bits_per_pixel=req("bits_per_pixel"),
            compression_ratio=req("compression_ratio"),
            fps=req("fps"),
        )

    def mission(self) -> MissionSpec:
        return MissionSpec(
            area_m2=self.require("mission.area_m2"),
            gsd_m=self.require("mission.gsd_m"),
            speed_m_s=self.get("mission.speed_m_s", self.require("drone.speed_m_s")),
            front_overlap=self.get("mission.front_overlap"),
            side_overlap=self.get("mission.side_overlap"),
            deadline_s=self.require("mission.deadline_s"),
        )

    def link_budget(self, num_drones: int | None = None, tau_dl: int = 1, tau_ctrl: int = 0) -> LinkBudget:
        return LinkBudget(
            carrier_hz=self.require("link.carrier_hz"),
            bandwidth_hz=self.require("link.bandwidth_hz"),
            noise_density_w_hz=self.noise_density_w_hz(),
            data_snr=10 ** (self.require("link.data_snr_db") / 10),
            pilot_snr=10 ** (self.get("link.pilot_snr_db") / 10),
            kappa=self.get("link.kappa"),
            chi_wc=self.get("link.chi_wc"),
            speed_m_s=self.require("drone.speed_m_s"),
            coherence_bw_hz=self.require("link.coherence_bw_hz"),
            num_drones=self.require("drone.count") if num_drones is None else num_drones,
            tau_dl=tau_dl,
            tau_ctrl=tau_ctrl,
        )

    def experiment_config(self, trials: int | None = None, seed: int | None = None) -> ExperimentConfig:
        min_el = self.get("shell.min_elevation_deg")
        rpy = tuple(
            math.radians(self.get(f"array.identical_{axis}_deg"))
            for axis in ("roll", "pitch", "yaw")
        )
        return ExperimentConfig(
            name=self.name,
            trials=self.get("sim.trials") if trials is None else trials,
            seed=self.get("sim.seed") if seed is None else seed,
            num_elements=self.get("array.size"),
            num_drones=self.require("drone.count"),
            shell=self.shell(),
            min_elevation=None if min_el is None else math.radians(min_el),
            carrier_hz=self.require("link.carrier_hz"),
            bandwidth_hz=self.require("link.bandwidth_hz"),
            noise_density_w_hz=self.noise_density_w_hz(),
            data_snr=10 ** (self.require("link.data_snr_db") / 10),
            pilot_snr=10 ** (self.get("link.pilot_snr_db") / 10),
            kappa=self.get("link.kappa"),
            chi_wc=self.get("link.chi_wc"),
            speed_m_s=self.require("drone.speed_m_s"),
            coherence_bw_hz=self.require("link.coherence_bw_hz"),
            spacing_wavelengths=self.get("array.spacing_wavelengths"),
            gs_element_kind=self.get("array.element"),
            gs_orientation=self.get("array.orientation"),
            gs_orientation_seed=self.get("array.orientation_seed"),
            gs_identical_rpy=rpy,
            drone_element_kind=self.get("drone.antenna"),
            pattern_normalization=self.get("sim.pattern_normalization"),
            power_cap_w=self.get("sim.power_cap_w"),
            ctrl_fraction=self.get("frame.ctrl_fraction"),
            ul_data_fraction=self.get("frame.ul_data_fraction"),
            dl_pilots=self.get("frame.dl_pilots"),
        )


def _coerce(key: str, raw: str):
    if key not in KNOWN_KEYS:
        raise ConfigError(f"unknown scenario key {key!r}")
    typ, _ = KNOWN_KEYS[key]
    if typ is str:
        return raw
    try:
        if typ is int:
            value = float(raw)
            if value != int(value):
                raise ValueError
            return int(value)
        return float(raw)
    except ValueError:
        raise ConfigError(f"scenario key {key!r} expects {typ.__name__}, got {raw!r}") from None


def parse_scenario(text: str) -> Scenario:
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = _coerce(key, raw)
    missing = [k for k, (_, required) in KNOWN_KEYS.items() if required and k not in values]
    if missing:
        raise ConfigError(f"scenario is missing required keys: {', '.join(missing)}")
    return Scenario(values=values)


def scenario_names() -> list[str]:
    files = resources.files("dronelink").joinpath("scenarios")
    return sorted(p.name.removesuffix(".scn") for p in files.iterdir() if p.name.endswith(".scn"))


BUILTIN_SCENARIOS = ("disaster", "disaster_gsd20cm", "sports", "sports_text", "racing")


def load_scenario(name_or_path: str) -> Scenario:
    """Load a bundled scenario by name or parse a scenario file from a path."""
    candidate = resources.files("dronelink").joinpath("scenarios", f"{name_or_path}.scn")
    if candidate.is_file():
        return parse_scenario(candidate.read_text())
    try:
        with open(name_or_path, encoding="utf-8") as handle:
            return parse_scenario(handle.read())
    except FileNotFoundError:
        raise ConfigError(
            f"no scenario named {name_or_path!r}; bundled scenarios are "
            f"{', '.join(scenario_names())}"
        ) from None
