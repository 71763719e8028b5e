import numpy as np
import pytest
from scipy import stats

from dronelink.geometry import (
    ArrayGeometry,
    DroneState,
    ShellSpec,
    from_spherical,
    sample_shell,
    to_spherical,
    ula_positions,
    ura_positions,
)


def test_ula_single_element():
    assert np.array_equal(ula_positions(1, 1.0), [[0.0, 0.0, 0.0]])


def test_ula_three_elements():
    expected = [[0.0, 0, 0], [0.5, 0, 0], [1.0, 0, 0]]
    assert np.allclose(ula_positions(3, 0.5), expected)


def test_ula_aperture_matches_half_wavelength_layout():
    # 100 elements at half-wavelength spacing for a 0.125 m wavelength
    geom = ArrayGeometry.ula(100, 0.0625)
    assert geom.aperture == pytest.approx(99 * 0.0625)
    assert geom.aperture == pytest.approx(6.1875)
    assert 100 * 0.0625 == pytest.approx(6.25)


def test_ula_rejects_bad_args():
    with pytest.raises(ValueError):
        ula_positions(0, 0.5)
    with pytest.raises(ValueError):
        ula_positions(4, -1.0)


def test_ura_positions_grid():
    pos = ura_positions(2, 3, 0.5)
    assert pos.shape == (6, 3)
    assert np.allclose(pos[:, 2], 0.0)
    assert np.allclose(pos[-1], [0.5, 1.0, 0.0])


def test_to_spherical_axes():
    assert to_spherical([0, 0, 1]) == pytest.approx((1.0, 0.0, 0.0))
    d, theta, phi = to_spherical([1, 0, 0])
    assert (d, theta, phi) == pytest.approx((1.0, np.pi / 2, 0.0))
    d, theta, phi = to_spherical([0, 2, 0])
    assert (d, theta, phi) == pytest.approx((2.0, np.pi / 2, np.pi / 2))


def test_to_spherical_rejects_origin():
    with pytest.raises(ValueError):
        to_spherical([0.0, 0.0, 0.0])


def test_spherical_round_trip_and_ranges():
    rng = np.random.default_rng(1)
    points = rng.normal(size=(1_000_000, 3))
    # vectorized range check mirrors the scalar contract
    d = np.linalg.norm(points, axis=1)
    theta = np.arccos(np.clip(points[:, 2] / d, -1, 1))
    phi = np.mod(np.arctan2(points[:, 1], points[:, 0]), 2 * np.pi)
    assert theta.min() >= 0 and theta.max() <= np.pi
    assert phi.min() >= 0 and phi.max() < 2 * np.pi

    for p in rng.normal(size=(200, 3)):
        dist, th, ph = to_spherical(p)
        assert 0 <= th <= np.pi
        assert 0 <= ph < 2 * np.pi
        back = from_spherical(dist, th, ph)
        assert np.linalg.norm(back - p) <= 1e-12 * dist


def test_shell_spec_validation():
    with pytest.raises(ValueError):
        ShellSpec(500.0, 20.0)
    with pytest.raises(ValueError):
        ShellSpec(0.0, 20.0)
    with pytest.raises(ValueError):
        ShellSpec(-5.0, -1.0)


def test_degenerate_shell_puts_everything_on_the_sphere():
    drones = sample_shell(0, 50, ShellSpec(500.0, 500.0))
    assert all(d.distance == pytest.approx(500.0) for d in drones)


def test_shell_radial_cdf_matches_volume_law():
    # oracle: for uniform-in-volume draws the radial CDF is
    # F(x) = (x^3 - rmin^3) / (rmax^3 - rmin^3)
    shell = ShellSpec(20.0, 500.0)
    drones = sample_shell(123, 100_000, shell)
    radii = np.array([d.distance for d in drones])

    def radial_cdf(x):
        return (x**3 - shell.r_min**3) / (shell.r_max**3 - shell.r_min**3)

    ks = stats.kstest(radii, radial_cdf)
    assert ks.statistic < 0.01


def test_shell_mean_square_distance_matches_moment():
    # E[d^2] = (3/5) (R^5 - r^5) / (R^3 - r^3)
    shell = ShellSpec(20.0, 500.0)
    drones = sample_shell(7, 100_000, shell)
    radii = np.array([d.distance for d in drones])
    expected = 0.6 * (shell.r_max**5 - shell.r_min**5) / (shell.r_max**3 - shell.r_min**3)
    assert np.mean(radii**2) == pytest.approx(expected, rel=0.01)


def test_shell_determinism():
    a = sample_shell(99, 64, ShellSpec(20, 500), sample_orientation=True)
    b = sample_shell(99, 64, ShellSpec(20, 500), sample_orientation=True)
    for da, db in zip(a, b):
        assert (da.distance, da.theta, da.phi) == (db.distance, db.theta, db.phi)
        assert (da.roll, da.pitch, da.yaw) == (db.roll, db.pitch, db.yaw)


def test_shell_min_elevation_restricts_to_cap():
    drones = sample_shell(5, 5000, ShellSpec(20, 500), min_elevation=np.deg2rad(10))
    elevations = np.pi / 2 - np.array([d.theta for d in drones])
    assert elevations.min() >= np.deg2rad(10) - 1e-12


def test_drone_state_validation():
    with pytest.raises(ValueError):
        DroneState(distance=-1.0, theta=0.1, phi=0.1)
    with pytest.raises(ValueError):
        DroneState(distance=1.0, theta=4.0, phi=0.1)
    with pytest.raises(ValueError):
        DroneState(distance=1.0, theta=0.1, phi=7.0)
    state = DroneState(distance=2.0, theta=np.pi / 2, phi=0.0)
    assert state.position() == pytest.approx([2.0, 0.0, 0.0])


def test_array_geometry_default_orientations():
    geom = ArrayGeometry.ula(4, 0.5)
    assert geom.element_orientations.shape == (4, 3, 3)
    assert np.allclose(geom.element_orientations, np.eye(3))
