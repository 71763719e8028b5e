"""Element radiation patterns, polarization states and mismatch factors.

Model summary
-------------
Each antenna is a combination of center-fed dipole arms.  In the antenna body
frame arm 1 lies along x and arm 2 along y; an element's world-frame arms are
obtained by applying its rotation matrix.  The far field of one arm in a unit
direction ``k`` is parallel to the transverse projection of the arm axis, with
the classical half-wave amplitude pattern cos((pi/2) cos g)/sin g (g = angle
between arm and direction) normalized to 1 at broadside.

Supported element kinds:

* ``isotropic``            - unit gain, polarization-matched by convention
* ``halfwave_dipole``      - single half-wave arm
* ``hertzian_dipole``      - single infinitesimal arm (sin g pattern)
* ``cross_dipole_linear``  - crossed pair, transmit/receive on arm 1 only
* ``cross_dipole_circular``- crossed pair fed in phase quadrature; the
  radiated state is circular on boresight and elliptical off boresight, which
  is computed exactly rather than approximated.

The polarization match between two antennas facing each other along a link is
``|e_t . e_r|^2`` where ``e_t`` is the transmitter's unit far-field vector
toward the receiver, ``e_r`` the receiver's unit far-field vector back toward
the transmitter, and the product is the unconjugated bilinear dot.  This
makes co-rotating circular antennas match perfectly and is symmetric under
swapping the two ends.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .constants import HALFWAVE_DIRECTIVITY, HERTZIAN_DIRECTIVITY
from .geometry import ArrayGeometry, as_generator

__all__ = [
    "ELEMENT_KINDS",
    "ElementPattern",
    "PolarizationState",
    "effective_gain",
    "element_response",
    "far_field",
    "link_chi",
    "mismatch_factor",
    "pseudo_random_orientations",
    "random_rotations",
    "rotation_from_rpy",
    "transverse_basis",
]

ELEMENT_KINDS = {
    "isotropic": _kernels.KIND_ISOTROPIC,
    "halfwave_dipole": _kernels.KIND_HALFWAVE,
    "cross_dipole_linear": _kernels.KIND_CROSS_LINEAR,
    "cross_dipole_circular": _kernels.KIND_CROSS_CIRCULAR,
    "hertzian_dipole": _kernels.KIND_HERTZIAN,
}


def rotation_from_rpy(roll: float, pitch: float, yaw: float) -> np.ndarray:
    """Body-to-world rotation matrix, intrinsic z-y-x (yaw, pitch, roll)."""
    cr, sr = np.cos(roll), np.sin(roll)
    cp, sp = np.cos(pitch), np.sin(pitch)
    cy, sy = np.cos(yaw), np.sin(yaw)
    rx = np.array([[1, 0, 0], [0, cr, -sr], [0, sr, cr]])
    ry = np.array([[cp, 0, sp], [0, 1, 0], [-sp, 0, cp]])
    rz = np.array([[cy, -sy, 0], [sy, cy, 0], [0, 0, 1]])
    return rz @ ry @ rx


def random_rotations(seed_or_rng, count: int) -> np.ndarray:
    """count rotation matrices drawn uniformly over SO(3) (via unit quaternions)."""
    rng = as_generator(seed_or_rng)
    q = rng.normal(size=(count, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    w, x, y, z = q[:, 0], q[:, 1], q[:, 2], q[:, 3]
    rot = np.empty((count, 3, 3))
    rot[:, 0, 0] = 1 - 2 * (y * y + z * z)
    rot[:, 0, 1] = 2 * (x * y - z * w)
    rot[:, 0, 2] = 2 * (x * z + y * w)
    rot[:, 1, 0] = 2 * (x * y + z * w)
    rot[:, 1, 1] = 1 - 2 * (x * x + z * z)
    rot[:, 1, 2] = 2 * (y * z - x * w)
    rot[:, 2, 0] = 2 * (x * z - y * w)
    rot[:, 2, 1] = 2 * (y * z + x * w)
    rot[:, 2, 2] = 1 - 2 * (x * x + y * y)
    return rot


def pseudo_random_orientations(seed_or_rng, count: int) -> np.ndarray:
    """Independent uniformly distributed element orientations, seeded."""
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    return random_rotations(seed_or_rng, count)


@dataclass(frozen=True)
class PolarizationState:
    """Jones vector in the transverse plane of a propagation direction.

    Components refer to a (theta_hat, phi_hat) basis agreed on by the caller;
    the vector must have unit norm.
    """

    jones: np.ndarray

    def __post_init__(self):
        j = np.asarray(self.jones, dtype=complex).reshape(2)
        if abs(np.linalg.norm(j) - 1.0) > 1e-12:
            raise ValueError("polarization state must have unit norm")
        object.__setattr__(self, "jones", j)

    @classmethod
    def linear(cls, angle: float = 0.0) -> "PolarizationState":
        return cls(np.array([np.cos(angle), np.sin(angle)], dtype=complex))

    @classmethod
    def circular(cls, handedness: int = +1) -> "PolarizationState":
        return cls(np.array([1.0, 1j * np.sign(handedness)]) / np.sqrt(2.0))


@dataclass(frozen=True)
class ElementPattern:
    """Antenna element: pattern kind plus body-to-world rotation."""

    kind: str
    rotation: np.ndarray = field(default_factory=lambda: np.eye(3))

    def __post_init__(self):
        if self.kind not in ELEMENT_KINDS:
            raise ValueError(
                f"unknown element kind {self.kind!r}; expected one of "
                f"{sorted(ELEMENT_KINDS)}"
            )
        object.__setattr__(self, "rotation", np.asarray(self.rotation, dtype=float))

    @property
    def kind_code(self) -> int:
        return ELEMENT_KINDS[self.kind]

    @property
    def arm1(self) -> np.ndarray:
        return self.rotation[:, 0]

    @property
    def arm2(self) -> np.ndarray:
        return self.rotation[:, 1]


def _unit(v: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("direction must be a nonzero vector")
    return np.asarray(v, dtype=float) / n


def _arm_field_scalar(axis: np.ndarray, direction: np.ndarray, halfwave: bool) -> np.ndarray:
    c = float(np.dot(axis, direction))
    s2 = 1.0 - c * c
    proj = axis - c * direction
    if s2 <= 1e-24:
        return np.zeros(3)
    if halfwave:
        return np.cos(0.5 * np.pi * c) / s2 * proj
    return proj


def far_field(pattern: ElementPattern, direction) -> tuple[float, np.ndarray]:
    """Gain and complex far-field 3-vector of an element in a unit direction.

    The returned vector e is transverse to the direction and scaled so that
    gain = directivity * |e|^2; for zero gain (on-axis dipole) e is the zero
    vector.  This is the scalar reference twin of the batched kernels.
    """
    direction = _unit(direction)
    kind = pattern.kind
    if kind == "isotropic":
        return 1.0, np.zeros(3, dtype=complex)
    if kind in ("halfwave_dipole", "cross_dipole_linear"):
        e = _arm_field_scalar(pattern.arm1, direction, halfwave=True).astype(complex)
        return HALFWAVE_DIRECTIVITY * float(np.sum(np.abs(e) ** 2)), e
    if kind == "cross_dipole_circular":
        e1 = _arm_field_scalar(pattern.arm1, direction, halfwave=True)
        e2 = _arm_field_scalar(pattern.arm2, direction, halfwave=True)
        e = (e1 + 1j * e2) / np.sqrt(2.0)
        return HALFWAVE_DIRECTIVITY * float(np.sum(np.abs(e) ** 2)), e
    if kind == "hertzian_dipole":
        e = _arm_field_scalar(pattern.arm1, direction, halfwave=False).astype(complex)
        return HERTZIAN_DIRECTIVITY * float(np.sum(np.abs(e) ** 2)), e
    raise AssertionError(f"unhandled kind {kind}")


def transverse_basis(direction) -> tuple[np.ndarray, np.ndarray]:
    """(theta_hat, phi_hat) basis of the plane transverse to a direction.

    Matches the spherical convention of the geometry module; on the poles the
    azimuth is fixed to zero, giving theta_hat = +/-x and phi_hat = y.
    """
    d = _unit(direction)
    st = np.hypot(d[0], d[1])
    if st < 1e-300:
        sign = 1.0 if d[2] > 0 else -1.0
        return np.array([sign, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])
    ct = d[2]
    cp, sp = d[0] / st, d[1] / st
    theta_hat = np.array([ct * cp, ct * sp, -st])
    phi_hat = np.array([-sp, cp, 0.0])
    return theta_hat, phi_hat


def element_response(pattern: ElementPattern, direction) -> tuple[float, PolarizationState]:
    """Power gain and far-field polarization of an element in a direction.

    The polarization is reported in the (theta_hat, phi_hat) basis of the
    direction.  A zero-gain direction (dipole axis) returns gain 0 with the
    fixed placeholder state (1, 0); an isotropic element reports (1, 0) as
    well, again by convention.
    """
    gain, e = far_field(pattern, direction)
    norm = float(np.linalg.norm(e))
    if norm == 0.0:
        return gain, PolarizationState(np.array([1.0, 0.0], dtype=complex))
    th, ph = transverse_basis(direction)
    jones = np.array([np.dot(e, th), np.dot(e, ph)]) / norm
    return gain, PolarizationState(jones)


def mismatch_factor(tx_pol: PolarizationState, rx_pol: PolarizationState) -> float:
    """Polarization power match between transmit and receive states.

    Both states must be expressed in one common transverse basis for the link
    direction, with the receive state describing the field the receiving
    antenna would radiate back toward the transmitter.  A mismatch of the
    bases themselves is a caller contract violation that cannot be detected
    here.  Returns |<tx, conj(rx)>|^2 in [0, 1].
    """
    return float(np.abs(np.sum(tx_pol.jones * rx_pol.jones)) ** 2)


def link_chi(tx: ElementPattern, rx: ElementPattern, direction) -> float:
    """Combined gain and polarization factor of one link.

    direction is the unit vector from tx toward rx.  The factor multiplies
    both element power gains with the polarization match of the tx field
    (toward rx) against the rx field (back toward tx); isotropic elements
    contribute unit gain and are treated as polarization-matched.
    """
    direction = _unit(direction)
    if tx.kind == "isotropic" and rx.kind == "isotropic":
        return 1.0
    if tx.kind == "isotropic":
        return far_field(rx, -direction)[0]
    if rx.kind == "isotropic":
        return far_field(tx, direction)[0]
    d_tx = HERTZIAN_DIRECTIVITY if tx.kind == "hertzian_dipole" else HALFWAVE_DIRECTIVITY
    d_rx = HERTZIAN_DIRECTIVITY if rx.kind == "hertzian_dipole" else HALFWAVE_DIRECTIVITY
    _, e_tx = far_field(tx, direction)
    _, e_rx = far_field(rx, -direction)
    return d_tx * d_rx * float(np.abs(np.sum(e_tx * e_rx)) ** 2)


def effective_gain(
    geometry: ArrayGeometry,
    element_kind: str,
    drone_position,
    drone_pattern: ElementPattern,
) -> float:
    """Sum over array elements of the per-link gain/mismatch factor.

    The far-field direction is taken from the first array element, consistent
    with referencing path loss to that element.
    """
    direction = _unit(np.asarray(drone_position, dtype=float) - geometry.element_positions[0])
    total = 0.0
    for rot in geometry.element_orientations:
        total += link_chi(ElementPattern(element_kind, rot), drone_pattern, direction)
    return total
