"""3D placement of the ground-station array and the drone swarm.

Coordinate conventions: the ground station sits at the origin with a uniform
linear array laid out along the x-axis.  Spherical coordinates use the polar
angle theta measured from the z-axis (theta in [0, pi]) and the azimuth phi
measured from the x-axis in the xy-plane (phi in [0, 2*pi)).
"""

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ArrayGeometry",
    "DroneState",
    "ShellSpec",
    "as_generator",
    "from_spherical",
    "sample_shell",
    "to_spherical",
    "ula_positions",
    "ura_positions",
]


def as_generator(seed_or_rng) -> np.random.Generator:
    """Accept an int seed or an existing Generator and return a Generator."""
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(seed_or_rng)


@dataclass(frozen=True)
class ShellSpec:
    """Spherical shell around the ground station, radii in meters."""

    r_min: float
    r_max: float

    def __post_init__(self):
        if not (0 < self.r_min <= self.r_max):
            raise ValueError(
                f"shell radii must satisfy 0 < r_min <= r_max, got "
                f"({self.r_min}, {self.r_max})"
            )


@dataclass
class DroneState:
    """Position and pose of a single-antenna drone.

    distance is measured from the first array element; theta/phi follow the
    module's spherical convention.  roll/pitch/yaw describe the body rotation
    applied to the drone antenna; tx_power_w is the uplink transmit power.
    """

    distance: float
    theta: float
    phi: float
    roll: float = 0.0
    pitch: float = 0.0
    yaw: float = 0.0
    tx_power_w: float = 0.0

    def __post_init__(self):
        if self.distance <= 0:
            raise ValueError(f"distance must be positive, got {self.distance}")
        if not 0 <= self.theta <= np.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not 0 <= self.phi < 2 * np.pi:
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi}")

    def position(self) -> np.ndarray:
        """Cartesian position (meters)."""
        return from_spherical(self.distance, self.theta, self.phi)


@dataclass
class ArrayGeometry:
    """Ground-station array: element positions, spacing and orientations.

    element_orientations holds one 3x3 rotation matrix per element mapping
    antenna body axes to world axes (identity = unrotated element).
    """

    element_positions: np.ndarray
    spacing: float
    layout: str = "custom"
    element_orientations: np.ndarray = field(default=None)

    def __post_init__(self):
        self.element_positions = np.atleast_2d(
            np.asarray(self.element_positions, dtype=float)
        )
        if self.element_positions.shape[1] != 3:
            raise ValueError("element_positions must have shape (M, 3)")
        if self.spacing <= 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")
        if self.element_orientations is None:
            eye = np.eye(3)
            self.element_orientations = np.broadcast_to(
                eye, (self.num_elements, 3, 3)
            ).copy()
        else:
            self.element_orientations = np.asarray(
                self.element_orientations, dtype=float
            )
            if self.element_orientations.shape != (self.num_elements, 3, 3):
                raise ValueError("element_orientations must have shape (M, 3, 3)")

    @property
    def num_elements(self) -> int:
        return self.element_positions.shape[0]

    @property
    def aperture(self) -> float:
        """Largest pairwise element separation; (M-1)*spacing for a ULA."""
        span = self.element_positions.max(axis=0) - self.element_positions.min(axis=0)
        return float(np.linalg.norm(span))

    @classmethod
    def ula(cls, num_elements: int, spacing: float, element_orientations=None):
        return cls(
            ula_positions(num_elements, spacing),
            spacing,
            layout="ula",
            element_orientations=element_orientations,
        )

    @classmethod
    def ura(cls, nx: int, ny: int, spacing: float, element_orientations=None):
        return cls(
            ura_positions(nx, ny, spacing),
            spacing,
            layout="ura",
            element_orientations=element_orientations,
        )


def ula_positions(num_elements: int, spacing: float) -> np.ndarray:
    """Element positions of a uniform linear array along the x-axis.

    Element l (1-based) sits at ((l-1)*spacing, 0, 0).
    """
    if num_elements < 1:
        raise ValueError(f"need at least one element, got {num_elements}")
    if spacing <= 0:
        raise ValueError(f"spacing must be positive, got {spacing}")
    pos = np.zeros((num_elements, 3))
    pos[:, 0] = spacing * np.arange(num_elements)
    return pos


def ura_positions(nx: int, ny: int, spacing: float) -> np.ndarray:
    """Uniform rectangular array in the xy-plane, row-major ordering."""
    if nx < 1 or ny < 1:
        raise ValueError(f"grid must be at least 1x1, got {nx}x{ny}")
    if spacing <= 0:
        raise ValueError(f"spacing must be positive, got {spacing}")
    ix, iy = np.meshgrid(np.arange(nx), np.arange(ny), indexing="ij")
    pos = np.zeros((nx * ny, 3))
    pos[:, 0] = spacing * ix.ravel()
    pos[:, 1] = spacing * iy.ravel()
    return pos


def to_spherical(position) -> tuple[float, float, float]:
    """Convert a Cartesian point to (distance, theta, phi).

    theta is measured from the z-axis, phi from the x-axis in the xy-plane
    and is reported in [0, 2*pi).  On the poles (sin(theta) == 0) the azimuth
    is ill-defined and fixed to phi = 0 so the round trip is deterministic.
    """
    p = np.asarray(position, dtype=float)
    d = float(np.linalg.norm(p))
    if d == 0.0:
        raise ValueError("cannot convert the zero vector to spherical coordinates")
    theta = float(np.arccos(np.clip(p[2] / d, -1.0, 1.0)))
    rho = np.hypot(p[0], p[1])
    if rho == 0.0:
        return d, theta, 0.0
    phi = float(np.arctan2(p[1], p[0]))
    if phi < 0:
        phi += 2 * np.pi
    if phi >= 2 * np.pi:  # guard against arctan2(-0.0, ...) wrapping
        phi = 0.0
    return d, theta, phi


def from_spherical(distance: float, theta: float, phi: float) -> np.ndarray:
    """Inverse of to_spherical."""
    st = np.sin(theta)
    return np.array(
        [
            distance * st * np.cos(phi),
            distance * st * np.sin(phi),
            distance * np.cos(theta),
        ]
    )


def sample_shell(
    seed_or_rng,
    count: int,
    shell: ShellSpec,
    min_elevation: float | None = None,
    sample_orientation: bool = False,
) -> list[DroneState]:
    """Draw drone positions i.i.d. uniform by volume inside a spherical shell.

    min_elevation (radians above the horizon) optionally restricts the draw to
    the spherical cap above that elevation; None keeps the full sphere.  With
    sample_orientation=True the roll/pitch/yaw angles are drawn independently
    and uniformly over [0, 2*pi).  Deterministic for a given seed.
    """
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    rng = as_generator(seed_or_rng)

    u = rng.random(count)
    radii = np.cbrt(shell.r_min**3 + u * (shell.r_max**3 - shell.r_min**3))
    # Uniform direction: cos(theta) uniform over the allowed band.
    cos_hi = 1.0
    cos_lo = -1.0 if min_elevation is None else np.sin(min_elevation)
    cos_theta = cos_lo + (cos_hi - cos_lo) * rng.random(count)
    thetas = np.arccos(np.clip(cos_theta, -1.0, 1.0))
    phis = rng.random(count) * 2 * np.pi

    if sample_orientation:
        rpy = rng.random((count, 3)) * 2 * np.pi
    else:
        rpy = np.zeros((count, 3))

    return [
        DroneState(
            distance=float(radii[i]),
            theta=float(thetas[i]),
            phi=float(min(phis[i], np.nextafter(2 * np.pi, 0))),
            roll=float(rpy[i, 0]),
            pitch=float(rpy[i, 1]),
            yaw=float(rpy[i, 2]),
        )
        for i in range(count)
    ]
