"""Channel synthesis, path loss, coherence budget and power control."""

import math
from dataclasses import dataclass

import numpy as np

from .constants import SPEED_OF_LIGHT
from .geometry import ArrayGeometry, DroneState, from_spherical, as_generator

__all__ = [
    "ChannelMatrix",
    "CoherenceBudget",
    "coherence",
    "free_space_beta",
    "inversion_power",
    "los_channel",
    "rayleigh_channel",
]


@dataclass
class ChannelMatrix:
    """M x K complex channel coefficients with per-link bookkeeping.

    beta holds the per-drone path loss (linear), chi the per-link combined
    gain/mismatch factor.  In line-of-sight mode |g[l, k]|^2 == beta[k] *
    chi[l, k] holds exactly up to rounding.
    """

    g: np.ndarray
    beta: np.ndarray
    chi: np.ndarray

    def __post_init__(self):
        self.g = np.asarray(self.g, dtype=complex)
        self.beta = np.asarray(self.beta, dtype=float)
        self.chi = np.asarray(self.chi, dtype=float)
        m, k = self.g.shape
        if self.beta.shape != (k,):
            raise ValueError(f"beta must have shape ({k},)")
        if self.chi.shape != (m, k):
            raise ValueError(f"chi must have shape ({m}, {k})")

    @property
    def num_elements(self) -> int:
        return self.g.shape[0]

    @property
    def num_drones(self) -> int:
        return self.g.shape[1]

    def column_norms_sq(self) -> np.ndarray:
        return np.sum(np.abs(self.g) ** 2, axis=0)


@dataclass
class CoherenceBudget:
    """Coherence interval and its split into TDD frame sections (symbols).

    The split fields are None until a frame allocation has been assigned;
    once set they must add up to tau, with at least as many uplink pilots as
    drones and at least one downlink pilot.
    """

    t_c: float
    b_c: float
    tau: int
    tau_ctrl: int | None = None
    tau_ul_pilot: int | None = None
    tau_ul_data: int | None = None
    tau_dl_pilot: int | None = None
    tau_dl_data: int | None = None

    def __post_init__(self):
        parts = (
            self.tau_ctrl,
            self.tau_ul_pilot,
            self.tau_ul_data,
            self.tau_dl_pilot,
            self.tau_dl_data,
        )
        if any(p is not None for p in parts):
            if any(p is None for p in parts):
                raise ValueError("either all or none of the frame split fields must be set")
            if sum(parts) != self.tau:
                raise ValueError(
                    f"frame split {parts} does not add up to tau = {self.tau}"
                )
            if self.tau_dl_pilot < 1:
                raise ValueError("at least one downlink pilot symbol is required")

    @property
    def tau_dl(self) -> int:
        """Downlink symbols (pilot plus data)."""
        if self.tau_dl_pilot is None:
            raise ValueError("frame split has not been assigned")
        return self.tau_dl_pilot + self.tau_dl_data


def free_space_beta(distance_m, wavelength_m) -> float:
    """Free-space path loss (lambda / (4 pi d))^2, linear scale."""
    d = np.asarray(distance_m, dtype=float)
    if np.any(d <= 0):
        raise ValueError("distance must be positive")
    if wavelength_m <= 0:
        raise ValueError("wavelength must be positive")
    out = (wavelength_m / (4 * np.pi * d)) ** 2
    return float(out) if np.isscalar(distance_m) else out


def los_channel(
    array: ArrayGeometry,
    drones: list[DroneState],
    wavelength_m: float,
    chi=1.0,
) -> ChannelMatrix:
    """Line-of-sight channel matrix for a set of drones.

    For an x-axis uniform linear array this evaluates
    g[l, k] = sqrt(beta_k chi_lk) * exp(-i 2 pi (d_k + (l-1) delta sin(theta_k)
    cos(phi_k)) / lambda); for general element positions the same planar
    far-field phase d_k + (p_l - p_1) . u_k is used, with u_k the unit vector
    toward drone k and amplitude referenced to the first-element distance d_k.
    """
    m = array.num_elements
    k = len(drones)
    if k == 0:
        raise ValueError("need at least one drone")
    d = np.array([dr.distance for dr in drones])
    u = np.stack([from_spherical(1.0, dr.theta, dr.phi) for dr in drones])  # (K, 3)
    beta = free_space_beta(d, wavelength_m)
    chi = np.broadcast_to(np.asarray(chi, dtype=float), (m, k)).copy()

    offsets = array.element_positions - array.element_positions[0]  # (M, 3)
    dist = d[None, :] + offsets @ u.T  # (M, K) planar far-field distances
    g = np.sqrt(beta[None, :] * chi) * np.exp(-2j * np.pi * dist / wavelength_m)
    return ChannelMatrix(g=g, beta=np.atleast_1d(beta), chi=chi)


def rayleigh_channel(seed_or_rng, num_elements: int, beta) -> ChannelMatrix:
    """I.i.d. Rayleigh-fading channel, column k circularly symmetric CN(0, beta_k)."""
    beta = np.atleast_1d(np.asarray(beta, dtype=float))
    if np.any(beta <= 0):
        raise ValueError("beta must be positive")
    rng = as_generator(seed_or_rng)
    k = beta.shape[0]
    z = rng.normal(size=(num_elements, k)) + 1j * rng.normal(size=(num_elements, k))
    g = np.sqrt(beta / 2.0) * z
    return ChannelMatrix(g=g, beta=beta, chi=np.ones((num_elements, k)))


def coherence(speed_m_s: float, carrier_hz: float, coherence_bw_hz: float) -> CoherenceBudget:
    """Coherence time and samples per coherence interval.

    T_c = c / (2 v f_c) and tau = floor(B_c T_c), computed as one fused ratio
    so that exactly representable inputs yield exact integer sample counts.
    v = 0 would make the coherence interval unbounded; callers must cap the
    speed at a positive value before calling.
    """
    if speed_m_s <= 0:
        raise ValueError(
            "speed must be positive (v = 0 gives an unbounded coherence time; cap it)"
        )
    if carrier_hz <= 0 or coherence_bw_hz <= 0:
        raise ValueError("carrier and coherence bandwidth must be positive")
    t_c = SPEED_OF_LIGHT / (2.0 * speed_m_s * carrier_hz)
    tau = math.floor(coherence_bw_hz * SPEED_OF_LIGHT / (2.0 * speed_m_s * carrier_hz))
    return CoherenceBudget(t_c=t_c, b_c=coherence_bw_hz, tau=tau)


def inversion_power(
    beta: float,
    chi_mean: float,
    target_snr: float,
    noise_density_w_hz: float,
    bandwidth_hz: float,
) -> float:
    """Transmit power of channel-inversion power control, in Watts.

    Returns p = target_snr * N0 * B / (beta * chi_mean), which drives the
    received per-antenna SNR averaged over the array to the target.  A
    non-positive beta * chi_mean (total gain/polarization blackout) returns
    inf, the out-of-coverage signal.
    """
    if target_snr <= 0 or noise_density_w_hz <= 0 or bandwidth_hz <= 0:
        raise ValueError("target SNR, noise density and bandwidth must be positive")
    denom = beta * chi_mean
    if denom <= 0:
        return math.inf
    return target_snr * noise_density_w_hz * bandwidth_hz / denom
