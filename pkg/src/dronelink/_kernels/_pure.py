"""NumPy implementation of the hot kernels.

This is the fallback backend; `dronelink._kernels._core` is the compiled
(Cython) twin with identical signatures and semantics.  Keep the two in sync;
tests assert their outputs agree bit-for-bit within 1e-12.

Antenna kind codes (shared with the compiled backend):
    0 isotropic
    1 half-wave dipole        (arm-1 axis)
    2 cross dipole, linear    (fed on arm 1 only; same pattern as 1)
    3 cross dipole, circular  (arms 1 and 2 fed in phase quadrature)
    4 Hertzian dipole         (arm-1 axis)
"""

import numpy as np

KIND_ISOTROPIC = 0
KIND_HALFWAVE = 1
KIND_CROSS_LINEAR = 2
KIND_CROSS_CIRCULAR = 3
KIND_HERTZIAN = 4

_HALFWAVE_D = 1.6409223769845852
_HERTZIAN_D = 1.5
_SIN2_EPS = 1e-24  # sin^2(angle to arm) below this counts as "on axis"


def _arm_field(axes: np.ndarray, dirs: np.ndarray, halfwave: bool) -> np.ndarray:
    """Unnormalized far-field vector of one dipole arm.

    axes and dirs broadcast against each other with a trailing length-3 axis.
    The result e satisfies |e| = F(angle between axis and direction), with F
    the field pattern normalized to 1 at broadside, and e parallel to the
    transverse projection of the arm axis.
    """
    c = np.sum(axes * dirs, axis=-1)
    s2 = 1.0 - c * c
    if halfwave:
        # cos((pi/2) c) / sin^2 -> pi/4 in the on-axis limit; the projected
        # axis vanishes there, so the clamped weight never matters.
        w = np.where(s2 > _SIN2_EPS, np.cos(0.5 * np.pi * c) / np.where(s2 > _SIN2_EPS, s2, 1.0), 0.25 * np.pi)
    else:
        w = np.ones_like(c)
    proj = axes - c[..., None] * dirs
    return w[..., None] * proj


def _side_field(kind: int, arm1: np.ndarray, arm2: np.ndarray, dirs: np.ndarray):
    """Far-field vector and directivity constant for one side of a link.

    Returns (evec, directivity) where evec is complex with |evec|^2 * directivity
    equal to the radiated power gain in that direction.
    """
    if kind == KIND_ISOTROPIC:
        return None, 1.0
    if kind in (KIND_HALFWAVE, KIND_CROSS_LINEAR):
        return _arm_field(arm1, dirs, halfwave=True).astype(complex), _HALFWAVE_D
    if kind == KIND_CROSS_CIRCULAR:
        e1 = _arm_field(arm1, dirs, halfwave=True)
        e2 = _arm_field(arm2, dirs, halfwave=True)
        return (e1 + 1j * e2) / np.sqrt(2.0), _HALFWAVE_D
    if kind == KIND_HERTZIAN:
        return _arm_field(arm1, dirs, halfwave=False).astype(complex), _HERTZIAN_D
    raise ValueError(f"unknown antenna kind code {kind}")


def chi_pairs(
    dirs: np.ndarray,
    gs_arm1: np.ndarray,
    gs_arm2: np.ndarray,
    gs_kind: int,
    dr_arm1: np.ndarray,
    dr_arm2: np.ndarray,
    dr_kind: int,
) -> np.ndarray:
    """Combined gain/polarization-mismatch factor for N directions x M elements.

    dirs (N, 3) are unit vectors from the ground station toward each drone;
    gs_arm* (M, 3) are world-frame arm axes per array element; dr_arm* (N, 3)
    per drone draw.  Returns chi with shape (N, M): the product of both
    antenna gains and the polarization match |e_gs . e_dr|^2 evaluated with
    the unconjugated bilinear product of the unit far-field vectors.
    """
    dirs = np.asarray(dirs, dtype=float)
    n = dirs.shape[0]
    m = gs_arm1.shape[0]

    # GS side radiates toward the drone: broadcast (N, 1, 3) against (M, 3).
    e_gs, d_gs = _side_field(
        gs_kind, gs_arm1[None, :, :], gs_arm2[None, :, :], dirs[:, None, :]
    )
    # Drone side radiates back toward the ground station.
    e_dr, d_dr = _side_field(dr_kind, dr_arm1, dr_arm2, -dirs)

    if e_gs is None and e_dr is None:
        return np.ones((n, m))
    if e_gs is None:
        gain_dr = d_dr * np.sum(np.abs(e_dr) ** 2, axis=-1)
        return np.broadcast_to(gain_dr[:, None], (n, m)).copy()
    if e_dr is None:
        return d_gs * np.sum(np.abs(e_gs) ** 2, axis=-1)

    dot = np.sum(e_gs * e_dr[:, None, :], axis=-1)
    return d_gs * d_dr * np.abs(dot) ** 2


def mrc_capacity_batch(g: np.ndarray, powers: np.ndarray) -> np.ndarray:
    """Per-drone spectral efficiency under maximum-ratio combining.

    g has shape (T, M, K) with one M x K channel matrix per trial; powers has
    shape (T, K) holding noise-normalized transmit powers.  Returns (T, K)
    rates in bits/s/Hz; a zero channel column yields rate 0.
    """
    g = np.asarray(g, dtype=complex)
    powers = np.asarray(powers, dtype=float)
    gram = np.einsum("tmk,tml->tkl", g.conj(), g)
    norm2 = np.maximum(np.real(np.einsum("tkk->tk", gram)), 0.0)
    cross = np.abs(gram) ** 2
    k = g.shape[2]
    cross[:, np.arange(k), np.arange(k)] = 0.0
    interference = np.einsum("tj,tkj->tk", powers, cross)
    denom = interference + norm2
    with np.errstate(divide="ignore", invalid="ignore"):
        sinr = np.where(norm2 > 0.0, powers * norm2**2 / denom, 0.0)
    return np.log2(1.0 + sinr)
