"""Seeded Monte Carlo experiments: capacity CDFs, transmit-power coverage,
sum-throughput sweeps, effective-gain maps and range-vs-throughput curves.

Reproducibility contract: every trial draws its random variates from its own
counter-derived substream (master seed + trial index), so results are
bit-identical for a given (scenario, seed, trial count), independent of
chunking or execution order, and growing the trial count extends the sample
stream instead of reshuffling it.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .antenna import ELEMENT_KINDS, pseudo_random_orientations, rotation_from_rpy
from .channel import free_space_beta, los_channel, rayleigh_channel
from .constants import (
    HALFWAVE_DIRECTIVITY,
    HERTZIAN_DIRECTIVITY,
    SPEED_OF_LIGHT,
    dbm_per_hz_to_w_per_hz,
)
from .errors import ConfigError, InfeasibleError
from .geometry import ArrayGeometry, ShellSpec, sample_shell
from .mimo import LinkBudget, ergodic_rate_lb, coverage_range, omega
from .mission import frame_budget

__all__ = [
    "CapacityCdfResult",
    "EmpiricalDistribution",
    "ExperimentConfig",
    "PowerCoverageResult",
    "capacity_cdf",
    "effective_gain_map",
    "power_coverage_cdf",
    "range_throughput_curve",
    "sum_throughput_sweep",
    "trial_rng",
]

_CHUNK = 4096


def trial_rng(master_seed: int, trial: int) -> np.random.Generator:
    """Independent substream for one trial, derived from the master seed."""
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(trial,)))


@dataclass
class EmpiricalDistribution:
    """Sorted Monte Carlo samples with their empirical CDF."""

    samples: np.ndarray
    grid: np.ndarray
    cdf_values: np.ndarray

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=float)
        self.grid = np.asarray(self.grid, dtype=float)
        self.cdf_values = np.asarray(self.cdf_values, dtype=float)
        if np.any(np.diff(self.samples) < 0) or np.any(np.diff(self.cdf_values) < 0):
            raise ValueError("samples and CDF values must be non-decreasing")
        if self.cdf_values.size and not (
            0.0 <= self.cdf_values[0] and self.cdf_values[-1] <= 1.0
        ):
            raise ValueError("CDF values must lie in [0, 1]")

    @classmethod
    def from_samples(cls, samples, grid=None) -> "EmpiricalDistribution":
        s = np.sort(np.asarray(samples, dtype=float).ravel())
        if grid is None:
            grid = s
        grid = np.asarray(grid, dtype=float)
        cdf = np.searchsorted(s, grid, side="right") / s.size
        return cls(samples=s, grid=grid, cdf_values=cdf)

    def cdf(self, x):
        """P(sample <= x); 0 below all samples and 1 above all of them."""
        return np.searchsorted(self.samples, np.asarray(x), side="right") / self.samples.size

    def quantile(self, q):
        return np.quantile(self.samples, q, method="inverted_cdf")


@dataclass
class ExperimentConfig:
    """Scenario parameters of one Monte Carlo experiment."""

    name: str = "custom"
    trials: int = 10_000
    seed: int = 0
    num_elements: int = 100
    num_drones: int = 20
    shell: ShellSpec = field(default_factory=lambda: ShellSpec(20.0, 500.0))
    min_elevation: float | None = None
    carrier_hz: float = 2.4e9
    bandwidth_hz: float = 20e6
    noise_density_w_hz: float = dbm_per_hz_to_w_per_hz(-167.0)
    data_snr: float = 1.0
    pilot_snr: float = 1.0
    kappa: float = 1.0
    chi_wc: float = 0.1
    speed_m_s: float = 30.0
    coherence_bw_hz: float = 3e6
    spacing_wavelengths: float = 0.5
    gs_element_kind: str = "cross_dipole_linear"
    gs_orientation: str = "identical"
    gs_orientation_seed: int = 0
    # identical-orientation pose: arm 1 vertical, arm 2 along y
    gs_identical_rpy: tuple = (0.0, -np.pi / 2, 0.0)
    drone_element_kind: str = "halfwave_dipole"
    # "directivity" reports absolute element gains (half-wave peak 1.64);
    # "peak" normalizes every pattern to its maximum, the convention of
    # classical polarization-loss analyses, so chi <= 1 per link.
    pattern_normalization: str = "directivity"
    power_cap_w: float = 0.1
    ctrl_fraction: float = 0.0
    ul_data_fraction: float = 0.9
    dl_pilots: int = 1
    sink: str | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError("trial count must be at least 1")
        if self.num_elements < 1 or self.num_drones < 1:
            raise ConfigError("need at least one antenna and one drone")
        if self.gs_element_kind not in ELEMENT_KINDS:
            raise ConfigError(f"unknown GS element kind {self.gs_element_kind!r}")
        if self.drone_element_kind not in ELEMENT_KINDS:
            raise ConfigError(f"unknown drone element kind {self.drone_element_kind!r}")
        if self.gs_orientation not in ("identical", "pseudo_random"):
            raise ConfigError(
                f"gs_orientation must be 'identical' or 'pseudo_random', got "
                f"{self.gs_orientation!r}"
            )
        if self.pattern_normalization not in ("directivity", "peak"):
            raise ConfigError(
                f"pattern_normalization must be 'directivity' or 'peak', got "
                f"{self.pattern_normalization!r}"
            )

    def chi_scale(self) -> float:
        """Factor converting kernel chi values to the configured convention."""
        if self.pattern_normalization == "directivity":
            return 1.0
        scale = 1.0
        for kind in (self.gs_element_kind, self.drone_element_kind):
            if kind == "isotropic":
                continue
            scale /= HERTZIAN_DIRECTIVITY if kind == "hertzian_dipole" else HALFWAVE_DIRECTIVITY
        return scale

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_hz

    @property
    def spacing_m(self) -> float:
        return self.spacing_wavelengths * self.wavelength_m

    def gs_rotations(self) -> np.ndarray:
        if self.gs_orientation == "identical":
            rot = rotation_from_rpy(*self.gs_identical_rpy)
            return np.broadcast_to(rot, (self.num_elements, 3, 3)).copy()
        return pseudo_random_orientations(self.gs_orientation_seed, self.num_elements)

    def link_budget(self, num_drones: int | None = None, tau_dl: int = 1, tau_ctrl: int = 0) -> LinkBudget:
        return LinkBudget(
            carrier_hz=self.carrier_hz,
            bandwidth_hz=self.bandwidth_hz,
            noise_density_w_hz=self.noise_density_w_hz,
            data_snr=self.data_snr,
            pilot_snr=self.pilot_snr,
            kappa=self.kappa,
            chi_wc=self.chi_wc,
            speed_m_s=self.speed_m_s,
            coherence_bw_hz=self.coherence_bw_hz,
            num_drones=self.num_drones if num_drones is None else num_drones,
            tau_dl=tau_dl,
            tau_ctrl=tau_ctrl,
        )


@dataclass
class CapacityCdfResult:
    los: EmpiricalDistribution
    rayleigh: EmpiricalDistribution
    # per-trial capacities in trial order, shape (trials, K)
    los_samples: np.ndarray
    rayleigh_samples: np.ndarray


def capacity_cdf(config: ExperimentConfig) -> CapacityCdfResult:
    """CDF of instantaneous per-drone capacity, LoS versus i.i.d. Rayleigh.

    Each trial samples drone positions uniformly in the configured shell,
    builds both channel matrices with unit gain/mismatch factors, applies
    channel-inversion power control toward the target data SNR and records
    every drone's MRC capacity.
    """
    m, k = config.num_elements, config.num_drones
    array = ArrayGeometry.ula(m, config.spacing_m)
    lam = config.wavelength_m

    los_rates = np.empty((config.trials, k))
    ray_rates = np.empty((config.trials, k))
    g_los = np.empty((_CHUNK, m, k), dtype=complex)
    g_ray = np.empty((_CHUNK, m, k), dtype=complex)
    powers = np.empty((_CHUNK, k))

    for start in range(0, config.trials, _CHUNK):
        stop = min(start + _CHUNK, config.trials)
        n = stop - start
        for i, t in enumerate(range(start, stop)):
            rng = trial_rng(config.seed, t)
            drones = sample_shell(rng, k, config.shell, config.min_elevation)
            beta = free_space_beta(np.array([d.distance for d in drones]), lam)
            powers[i] = config.data_snr / beta  # inversion control, chi == 1
            g_los[i] = los_channel(array, drones, lam).g
            g_ray[i] = rayleigh_channel(rng, m, beta).g
        los_rates[start:stop] = _kernels.mrc_capacity_batch(g_los[:n], powers[:n])
        ray_rates[start:stop] = _kernels.mrc_capacity_batch(g_ray[:n], powers[:n])

    return CapacityCdfResult(
        los=EmpiricalDistribution.from_samples(los_rates),
        rayleigh=EmpiricalDistribution.from_samples(ray_rates),
        los_samples=los_rates,
        rayleigh_samples=ray_rates,
    )


@dataclass
class PowerCoverageResult:
    distribution: EmpiricalDistribution
    coverage: float
    power_cap_w: float
    # required powers in trial order (W); inf marks polarization blackout
    samples: np.ndarray


def _rpy_rotations(roll, pitch, yaw) -> np.ndarray:
    """Vectorized body-to-world rotations, intrinsic z-y-x convention."""
    cr, sr = np.cos(roll), np.sin(roll)
    cp, sp = np.cos(pitch), np.sin(pitch)
    cy, sy = np.cos(yaw), np.sin(yaw)
    rot = np.empty((np.shape(roll)[0], 3, 3))
    rot[:, 0, 0] = cy * cp
    rot[:, 0, 1] = cy * sp * sr - sy * cr
    rot[:, 0, 2] = cy * sp * cr + sy * sr
    rot[:, 1, 0] = sy * cp
    rot[:, 1, 1] = sy * sp * sr + cy * cr
    rot[:, 1, 2] = sy * sp * cr - cy * sr
    rot[:, 2, 0] = -sp
    rot[:, 2, 1] = cp * sr
    rot[:, 2, 2] = cp * cr
    return rot


def power_coverage_cdf(config: ExperimentConfig) -> PowerCoverageResult:
    """Distribution of the uplink power required to hold the target SNR.

    Each trial draws a drone position in the shell and a body orientation
    with roll/pitch/yaw independently uniform over [0, 2 pi), averages the
    gain/mismatch factor over all array elements and inverts the link budget
    for the required transmit power.  Coverage is the fraction of trials at
    or below the power cap.
    """
    m = config.num_elements
    gs_rot = config.gs_rotations()
    identical = config.gs_orientation == "identical"
    if identical:
        gs_rot = gs_rot[:1]  # same far-field direction: one element suffices
    gs_arm1 = np.ascontiguousarray(gs_rot[:, :, 0])
    gs_arm2 = np.ascontiguousarray(gs_rot[:, :, 1])
    gs_kind = ELEMENT_KINDS[config.gs_element_kind]
    dr_kind = ELEMENT_KINDS[config.drone_element_kind]
    lam = config.wavelength_m

    cos_lo = -1.0 if config.min_elevation is None else math.sin(config.min_elevation)
    r3_min, r3_max = config.shell.r_min**3, config.shell.r_max**3

    p_req = np.empty(config.trials)
    draws = np.empty((_CHUNK, 6))
    for start in range(0, config.trials, _CHUNK):
        stop = min(start + _CHUNK, config.trials)
        n = stop - start
        for i, t in enumerate(range(start, stop)):
            draws[i] = trial_rng(config.seed, t).random(6)
        u = draws[:n]
        radius = np.cbrt(r3_min + u[:, 0] * (r3_max - r3_min))
        cos_theta = cos_lo + (1.0 - cos_lo) * u[:, 1]
        sin_theta = np.sqrt(np.maximum(1.0 - cos_theta**2, 0.0))
        phi = 2.0 * np.pi * u[:, 2]
        dirs = np.stack(
            [sin_theta * np.cos(phi), sin_theta * np.sin(phi), cos_theta], axis=1
        )
        rot = _rpy_rotations(*(2.0 * np.pi * u[:, 3 + j] for j in range(3)))
        chi = _kernels.chi_pairs(
            dirs,
            gs_arm1,
            gs_arm2,
            gs_kind,
            np.ascontiguousarray(rot[:, :, 0]),
            np.ascontiguousarray(rot[:, :, 1]),
            dr_kind,
        )
        chi_mean = chi.mean(axis=1) * config.chi_scale()
        beta = free_space_beta(radius, lam)
        need = config.data_snr * config.noise_density_w_hz * config.bandwidth_hz
        with np.errstate(divide="ignore"):
            p_req[start:stop] = np.where(
                chi_mean > 0.0, need / (beta * chi_mean), np.inf
            )

    coverage = float(np.mean(p_req <= config.power_cap_w))
    return PowerCoverageResult(
        distribution=EmpiricalDistribution.from_samples(p_req[np.isfinite(p_req)]),
        coverage=coverage,
        power_cap_w=config.power_cap_w,
        samples=p_req,
    )


def sum_throughput_sweep(config: ExperimentConfig, k_values) -> list[dict]:
    """Analytic sum throughput versus swarm size.

    For each K the coherence interval is split by the configured frame
    fractions and the ergodic-rate lower bound is evaluated; no Monte Carlo
    is involved.  Swarm sizes whose overhead cannot fit the coherence
    interval are flagged infeasible with zero throughput.
    """
    from .channel import coherence

    tau = coherence(config.speed_m_s, config.carrier_hz, config.coherence_bw_hz).tau
    om = omega(config.num_elements, config.spacing_wavelengths)
    rows = []
    for k in k_values:
        try:
            frame = frame_budget(
                tau,
                k,
                ctrl_fraction=config.ctrl_fraction,
                ul_data_fraction=config.ul_data_fraction,
                dl_pilots=config.dl_pilots,
            )
            budget = config.link_budget(
                num_drones=k, tau_dl=frame.tau_dl, tau_ctrl=frame.tau_ctrl
            )
            per_drone = ergodic_rate_lb(budget, config.num_elements, om)
        except InfeasibleError:
            per_drone = 0.0
        feasible = per_drone > 0.0
        rows.append(
            {
                "k": int(k),
                "per_drone_bps": per_drone,
                "sum_bps": k * per_drone,
                "feasible": feasible,
            }
        )
    return rows


def effective_gain_map(
    config: ExperimentConfig,
    azimuths_rad,
    elevations_rad,
    drone_alignment: str = "theta_hat",
):
    """Effective gain (dB) of the array over an azimuth/elevation grid.

    Elevation is measured from the horizon.  At every grid point the drone
    antenna points broadside at the ground station, its primary arm aligned
    with the direction's theta_hat (or phi_hat, per drone_alignment); the map
    value is the elementwise sum of the gain/mismatch factors.  Returns
    (azimuths, elevations, chi_db) with chi_db shaped (n_elev, n_azim).
    """
    if drone_alignment not in ("theta_hat", "phi_hat"):
        raise ConfigError(f"unknown drone alignment {drone_alignment!r}")
    az = np.asarray(azimuths_rad, dtype=float)
    el = np.asarray(elevations_rad, dtype=float)
    gs_rot = config.gs_rotations()
    gs_arm1 = np.ascontiguousarray(gs_rot[:, :, 0])
    gs_arm2 = np.ascontiguousarray(gs_rot[:, :, 1])
    gs_kind = ELEMENT_KINDS[config.gs_element_kind]
    dr_kind = ELEMENT_KINDS[config.drone_element_kind]

    az_grid, el_grid = np.meshgrid(az, el)
    theta = np.pi / 2 - el_grid.ravel()  # polar angle from zenith
    phi = az_grid.ravel()
    st, ct = np.sin(theta), np.cos(theta)
    cp, sp = np.cos(phi), np.sin(phi)
    dirs = np.stack([st * cp, st * sp, ct], axis=1)
    theta_hat = np.stack([ct * cp, ct * sp, -st], axis=1)
    phi_hat = np.stack([-sp, cp, np.zeros_like(sp)], axis=1)
    arm1, arm2 = (theta_hat, phi_hat) if drone_alignment == "theta_hat" else (phi_hat, theta_hat)

    chi = _kernels.chi_pairs(dirs, gs_arm1, gs_arm2, gs_kind, arm1, arm2, dr_kind)
    chi_k = chi.sum(axis=1) * config.chi_scale()
    with np.errstate(divide="ignore"):
        chi_db = 10.0 * np.log10(chi_k)
    return az, el, chi_db.reshape(el.size, az.size)


def range_throughput_curve(
    config: ExperimentConfig,
    throughputs_bps,
    carriers_hz=(2.4e9, 60e9),
    tx_power_w: float = 0.1,
) -> list[dict]:
    """Single-antenna coverage range versus required throughput per carrier.

    Each throughput maps to a target SNR via the full-band spectral
    efficiency, rho = 2^(Q/B) - 1, and the free-space range formula is
    applied; polarization loss is neglected.
    """
    rows = []
    for f_c in carriers_hz:
        for q in throughputs_bps:
            rho = 2.0 ** (q / config.bandwidth_hz) - 1.0
            rows.append(
                {
                    "carrier_hz": f_c,
                    "throughput_bps": float(q),
                    "target_snr": rho,
                    "range_m": coverage_range(
                        tx_power_w,
                        f_c,
                        config.bandwidth_hz,
                        rho,
                        config.noise_density_w_hz,
                    ),
                }
            )
    return rows
