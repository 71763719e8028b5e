"""Maximum-ratio-combining receiver analytics and link-budget inversion.

Everything here is closed form: instantaneous uplink capacity, the pairwise
interference lobe pattern of a uniform linear array, the spatial-signature
correlation omega, the ergodic-rate lower bound with TDD overhead, and its
inversion for the required antenna count, plus coverage-range helpers.
"""

import math
import warnings
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from . import _kernels
from .channel import ChannelMatrix
from .constants import SPEED_OF_LIGHT
from .errors import InfeasibleError

__all__ = [
    "AntennaRequirement",
    "LinkBudget",
    "antennas_required",
    "beamforming_range_gain",
    "coverage_range",
    "ergodic_rate_lb",
    "mobility_throughput_loss",
    "mrc_capacity",
    "omega",
    "pairwise_interference",
    "power_frequency_scaling",
]


@dataclass
class LinkBudget:
    """Parameter set of the ergodic-rate lower bound.

    data_snr/pilot_snr are linear; kappa is the array-average gain/mismatch
    factor and chi_wc its worst-case value used in the channel-estimation
    penalty term (their product must stay below 1).  tau_dl and tau_ctrl are
    symbol counts per coherence interval spent on downlink and control.
    """

    carrier_hz: float
    bandwidth_hz: float
    noise_density_w_hz: float
    data_snr: float
    pilot_snr: float
    kappa: float
    chi_wc: float
    speed_m_s: float
    coherence_bw_hz: float
    num_drones: int
    tau_dl: int
    tau_ctrl: int = 0

    def __post_init__(self):
        positives = {
            "carrier_hz": self.carrier_hz,
            "bandwidth_hz": self.bandwidth_hz,
            "noise_density_w_hz": self.noise_density_w_hz,
            "data_snr": self.data_snr,
            "pilot_snr": self.pilot_snr,
            "coherence_bw_hz": self.coherence_bw_hz,
        }
        for name, value in positives.items():
            if value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")
        if self.kappa * self.chi_wc >= 1:
            raise ValueError(
                f"kappa * chi_wc must be below 1, got {self.kappa * self.chi_wc}"
            )
        if self.kappa < 0 or self.chi_wc < 0:
            raise ValueError("kappa and chi_wc must be non-negative")
        if self.speed_m_s < 0:
            raise ValueError("speed must be non-negative")
        if self.num_drones < 1:
            raise ValueError("need at least one drone")
        if self.tau_dl < 0 or self.tau_ctrl < 0:
            raise ValueError("overhead symbol counts must be non-negative")

    def prelog(self) -> float:
        """Fraction of the coherence interval left for uplink data."""
        overhead = self.num_drones + self.tau_dl + self.tau_ctrl
        return 1.0 - (
            2.0 * self.speed_m_s * self.carrier_hz * overhead
            / (self.coherence_bw_hz * SPEED_OF_LIGHT)
        )


def mrc_capacity(channel, powers) -> np.ndarray:
    """Instantaneous per-drone capacity of the MRC uplink, bits/s/Hz.

    channel is a ChannelMatrix or a raw (M, K) complex array; powers holds
    the K noise-normalized transmit powers.  Drone k achieves
    log2(1 + p_k |g_k|^4 / (sum_{j != k} p_j |g_k^H g_j|^2 + |g_k|^2)); a
    zero channel column is out of coverage and scores 0.
    """
    g = channel.g if isinstance(channel, ChannelMatrix) else np.asarray(channel, dtype=complex)
    if g.ndim != 2:
        raise ValueError("channel must be an (M, K) matrix")
    powers = np.broadcast_to(np.asarray(powers, dtype=float), (g.shape[1],))
    if np.any(powers < 0):
        raise ValueError("powers must be non-negative")
    return _kernels.mrc_capacity_batch(g[None], powers[None])[0]


def _dirichlet_power(x: float, m: int) -> float:
    """|sum_l exp(i 2 pi l x)|^2 / M^2 for l = 0..M-1."""
    frac = x - round(x)
    if abs(frac) < 1e-15:
        return 1.0
    return (math.sin(math.pi * m * x) / (m * math.sin(math.pi * x))) ** 2


def pairwise_interference(
    m: int,
    spacing_over_wavelength: float,
    theta_k: float,
    phi_k: float,
    theta_j: float,
    phi_j: float,
) -> float:
    """Normalized interference power between two drones seen by an x-axis ULA.

    Evaluates sinc^2(M (delta/lambda) D) / sinc^2((delta/lambda) D) with
    D = sin(theta_k) cos(phi_k) - sin(theta_j) cos(phi_j), which equals
    |g_k^H g_j|^2 / (M^2 beta_k beta_j chi_k chi_j); note the normalization
    by M^2, so the value is 1 for drones sharing a direction.  Computed via
    the equivalent Dirichlet-kernel form, which stays finite on grating
    lobes where both sinc factors vanish.
    """
    if m < 1:
        raise ValueError("need at least one antenna")
    delta_dir = math.sin(theta_k) * math.cos(phi_k) - math.sin(theta_j) * math.cos(phi_j)
    return _dirichlet_power(spacing_over_wavelength * delta_dir, m)


def omega(m: int, spacing_over_wavelength: float) -> float:
    """Spatial-signature correlation of an M-element ULA.

    Sum over ordered element pairs (l != l') of sinc^2(2 (l - l') delta /
    lambda); zero whenever the spacing is an integer multiple of half a
    wavelength.
    """
    if m < 1:
        raise ValueError("need at least one antenna")
    lags = np.arange(1, m)
    if lags.size == 0:
        return 0.0
    terms = np.sinc(2.0 * lags * spacing_over_wavelength) ** 2
    return float(2.0 * np.sum((m - lags) * terms))


def _sinr_bound(budget: LinkBudget, m: float, omega_val: float) -> float:
    k, rho_u, rho_p = budget.num_drones, budget.data_snr, budget.pilot_snr
    pilot_penalty = (budget.kappa * budget.chi_wc / (rho_u * rho_p)) * (1.0 + k * rho_u)
    denom = rho_u * (k - 1) * (1.0 + omega_val / m) + 1.0 + pilot_penalty
    return m * rho_u / denom


def ergodic_rate_lb(budget: LinkBudget, m: int, omega_val: float = 0.0) -> float:
    """Lower bound on the per-drone uplink ergodic rate, bits/s.

    Multiplies the TDD pre-log factor (uplink-data share of the coherence
    interval) by the spectral efficiency of the MRC lower bound.  When the
    overhead exceeds the coherence interval the bound is vacuous: a warning
    is emitted and 0 is returned.
    """
    if m < 1:
        raise ValueError("need at least one antenna")
    prelog = budget.prelog()
    if prelog <= 0:
        warnings.warn(
            "frame overhead exceeds the coherence interval; rate bound is 0",
            RuntimeWarning,
            stacklevel=2,
        )
        return 0.0
    return budget.bandwidth_hz * prelog * math.log2(1.0 + _sinr_bound(budget, m, omega_val))


def mobility_throughput_loss(
    budget: LinkBudget, v1: float, v2: float, m: int, omega_val: float = 0.0
) -> float:
    """Relative throughput loss 1 - S(v2)/S(v1) between two drone speeds."""
    s1 = ergodic_rate_lb(replace(budget, speed_m_s=v1), m, omega_val)
    s2 = ergodic_rate_lb(replace(budget, speed_m_s=v2), m, omega_val)
    if s1 <= 0:
        raise InfeasibleError("reference speed already has a non-positive pre-log factor")
    return 1.0 - s2 / s1


class AntennaRequirement(NamedTuple):
    exact: float  # real-valued root of the rate bound inversion
    count: int  # integer antenna count (ceiling, floored at one antenna)


def antennas_required(
    budget: LinkBudget,
    target_rate_bps: float,
    omega_val: float = 0.0,
    method: str = "closed_form",
) -> AntennaRequirement:
    """Antenna count needed to hit a per-drone target rate.

    Inverts the ergodic-rate lower bound.  With omega_val = 0 this reduces to
    (K - 1 + 1/rho_u + kappa chi_wc (1 + K rho_u) / (rho_u^2 rho_p)) *
    (2^(Q / (prelog B)) - 1); a nonzero omega adds a quadratic correction so
    that feeding the result back into ergodic_rate_lb always meets the
    target.  method="bisection" searches ergodic_rate_lb directly instead of
    using the closed form.
    """
    if target_rate_bps <= 0:
        raise ValueError("target rate must be positive")
    prelog = budget.prelog()
    if prelog <= 0:
        raise InfeasibleError(
            "frame overhead exceeds the coherence interval; no antenna count "
            "can reach the target rate"
        )
    if method == "closed_form":
        s_target = 2.0 ** (target_rate_bps / (prelog * budget.bandwidth_hz)) - 1.0
        k, rho_u, rho_p = budget.num_drones, budget.data_snr, budget.pilot_snr
        c = (
            (k - 1)
            + 1.0 / rho_u
            + (budget.kappa * budget.chi_wc / (rho_u**2 * rho_p)) * (1.0 + k * rho_u)
        )
        b = s_target * c
        exact = 0.5 * (b + math.sqrt(b * b + 4.0 * s_target * (k - 1) * omega_val))
    elif method == "bisection":
        hi = 1
        while ergodic_rate_lb(budget, hi, omega_val) < target_rate_bps:
            hi *= 2
            if hi > 2**20:
                raise InfeasibleError("target rate unreachable below 2^20 antennas")
        lo = hi // 2
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if ergodic_rate_lb(budget, mid, omega_val) >= target_rate_bps:
                hi = mid
            else:
                lo = mid
        return AntennaRequirement(exact=float(hi), count=hi)
    else:
        raise ValueError(f"unknown method {method!r}")
    return AntennaRequirement(exact=exact, count=max(1, math.ceil(exact - 1e-9)))


def coverage_range(
    tx_power_w: float,
    carrier_hz: float,
    bandwidth_hz: float,
    target_snr: float,
    noise_density_w_hz: float,
) -> float:
    """Single-antenna coverage distance for a target data SNR, meters.

    R = (c / (4 pi f_c)) sqrt(P_t / (N0 B rho)), from the free-space link
    budget with unit antenna gains.
    """
    if min(tx_power_w, carrier_hz, bandwidth_hz, target_snr, noise_density_w_hz) <= 0:
        raise ValueError("all inputs must be positive")
    return (
        SPEED_OF_LIGHT
        / (4.0 * math.pi * carrier_hz)
        * math.sqrt(tx_power_w / (noise_density_w_hz * bandwidth_hz * target_snr))
    )


def power_frequency_scaling(p1_w: float, f1_hz: float, f2_hz: float) -> float:
    """Transmit power at carrier f2 matching the SNR of p1 at carrier f1."""
    if min(p1_w, f1_hz, f2_hz) <= 0:
        raise ValueError("all inputs must be positive")
    return p1_w * (f2_hz / f1_hz) ** 2


def beamforming_range_gain(m: int) -> float:
    """Data-channel range extension factor of coherent combining, sqrt(M)."""
    if m < 1:
        raise ValueError("need at least one antenna")
    return math.sqrt(m)
