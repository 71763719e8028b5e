"""Physical constants and unit helpers shared across the package."""

import numpy as np

SPEED_OF_LIGHT = 3.0e8  # m/s

# Thermal noise floor used as the default receiver noise power spectral density.
DEFAULT_NOISE_DBM_PER_HZ = -167.0

# Peak directivity of a lossless half-wave dipole (2.15 dBi).  The value is
# 2 / integral_0^pi cos^2((pi/2) cos t) / sin t dt; tests re-derive it by
# numerical quadrature.
HALFWAVE_DIRECTIVITY = 1.6409223769845852

# Peak directivity of an ideal Hertzian (infinitesimal) dipole.
HERTZIAN_DIRECTIVITY = 1.5


def wavelength(carrier_hz: float) -> float:
    """Free-space wavelength in meters for a carrier frequency in Hz."""
    if carrier_hz <= 0:
        raise ValueError(f"carrier frequency must be positive, got {carrier_hz}")
    return SPEED_OF_LIGHT / carrier_hz


def db_to_linear(db: float) -> float:
    """Convert a power ratio from dB to linear scale."""
    return 10.0 ** (np.asarray(db) / 10.0)


def linear_to_db(x: float) -> float:
    """Convert a linear power ratio to dB."""
    return 10.0 * np.log10(np.asarray(x))


def dbm_per_hz_to_w_per_hz(dbm_per_hz: float) -> float:
    """Convert a noise power spectral density from dBm/Hz to W/Hz."""
    return 10.0 ** (dbm_per_hz / 10.0) * 1e-3


def watts_to_dbm(watts: float) -> float:
    """Convert power in Watts to dBm."""
    return 10.0 * np.log10(np.asarray(watts) * 1e3)
