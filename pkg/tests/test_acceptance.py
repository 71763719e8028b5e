"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see every line.  The
statistical criteria (8, 10, 11) are the slow ones; the whole module targets
a few minutes single-threaded.
"""

import math
import time

import numpy as np
from oracles import eq_capacity_reference

from dronelink.channel import coherence, los_channel
from dronelink.constants import dbm_per_hz_to_w_per_hz
from dronelink.figures import _fig8b_configs, _fig10_configs, default_fig_scenario
from dronelink.geometry import ArrayGeometry, DroneState
from dronelink.mimo import (
    LinkBudget,
    antennas_required,
    coverage_range,
    ergodic_rate_lb,
    mobility_throughput_loss,
    mrc_capacity,
    omega,
    pairwise_interference,
)
from dronelink.mission import frame_budget, swarm_size, video_rate
from dronelink.scenarios import load_scenario
from dronelink.sim import capacity_cdf, effective_gain_map, power_coverage_cdf, sum_throughput_sweep

N0 = dbm_per_hz_to_w_per_hz(-167.0)


def check(criterion: int, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[acceptance] criterion {criterion:2d} {status}: {detail}")
    assert ok, f"criterion {criterion}: {detail}"


def scenario_budget(name: str) -> LinkBudget:
    scenario = load_scenario(name)
    tau = coherence(
        scenario.require("drone.speed_m_s"),
        scenario.require("link.carrier_hz"),
        scenario.require("link.coherence_bw_hz"),
    ).tau
    frame = frame_budget(tau, scenario.require("drone.count"))
    return scenario.link_budget(tau_dl=frame.tau_dl, tau_ctrl=frame.tau_ctrl)


def test_criterion_01_coherence_budget():
    a = coherence(30.0, 2.4e9, 3e6)
    b = coherence(30.0, 5.8e9, 3e6)
    c = coherence(20.0, 60e9, 3e6)
    ok = a.tau == 6250 and b.tau == 2586 and c.tau == 375 and abs(c.t_c - 0.125e-3) < 1e-12
    check(1, ok, f"tau = {a.tau}/{b.tau}/{c.tau}, T_c(60 GHz) = {c.t_c * 1e3:.3f} ms")


def test_criterion_02_coverage_range():
    r1 = coverage_range(0.1, 2.4e9, 20e6, 1.0, N0)
    r2 = coverage_range(1.0, 60e9, 300e6, 1.0, N0)
    r3 = coverage_range(0.1, 5.8e9, 20e6, 1.0, N0)
    ok = (
        abs(r1 - 4.97e3) <= 0.03 * 4.97e3
        and abs(r2 - 160.0) <= 0.03 * 160.0
        and abs(r3 - 2.06e3) <= 0.05 * 2.06e3
    )
    check(2, ok, f"R = {r1 / 1e3:.2f} km / {r2:.0f} m / {r3 / 1e3:.2f} km")


def test_criterion_03_mission_geometry():
    from dronelink.mission import altitude_for_gsd, fov_from_gsd, image_area

    h = [altitude_for_gsd(g, 5e-3, 2.3e-6) for g in (0.02, 0.2, 1.0)]
    fov = fov_from_gsd(0.02, 2664, 1496)
    area = image_area(0.02, 2664, 1496)
    ok = (
        abs(h[0] - 43.5) <= 0.435
        and abs(h[1] - 435.0) <= 4.35
        and abs(h[2] - 2174.0) <= 21.74
        and abs(fov - 61.1) <= 0.611
        and abs(area - 1594.0) <= 15.94
    )
    check(3, ok, f"altitudes {h[0]:.1f}/{h[1]:.0f}/{h[2]:.0f} m, FOV {fov:.1f} m, area {area:.0f} m^2")


def test_criterion_04_data_rates():
    from dronelink.mission import CameraSpec

    uhd = video_rate(CameraSpec(4096, 2160, 2.3e-6, 5e-3, 1.0, 24, 200, 60))
    racing = 25 * video_rate(CameraSpec(640, 480, 2.3e-6, 5e-3, 1.0, 8, 1, 30))
    vr = video_rate(CameraSpec(16384, 8192, 2.3e-6, 5e-3, 1.0, 24, 200, 60))
    ok = (
        abs(uhd - 63.7e6) <= 0.02 * 63.7e6
        and abs(racing - 1.84e9) <= 0.01 * 1.84e9
        and 920e6 <= vr <= 970e6
    )
    check(4, ok, f"{uhd / 1e6:.1f} Mbit/s, {racing / 1e9:.2f} Gbit/s, VR {vr / 1e6:.0f} Mbit/s")


def test_criterion_05_antenna_counts():
    results = {}
    for case, published in (("disaster", 216), ("racing", 420)):
        scenario = load_scenario(case)
        budget = scenario_budget(case)
        q_tar = video_rate(scenario.camera())
        m_req = antennas_required(budget, q_tar)
        achieved = ergodic_rate_lb(budget, m_req.count)
        results[case] = (m_req.count, published, achieved >= q_tar * (1 - 1e-9))
    ok = all(
        abs(count - published) <= 0.10 * published and round_trip
        for count, published, round_trip in results.values()
    )
    detail = ", ".join(
        f"{case}: M = {c} (published {p}, round trip {'ok' if r else 'violated'})"
        for case, (c, p, r) in results.items()
    )
    check(5, ok, detail)


def test_criterion_06_omega():
    zeros_ok = all(
        abs(omega(m, s)) <= 1e-12 for m in (2, 10, 100) for s in (0.5, 1.0, 1.5)
    )
    quarter = omega(2, 0.25)
    ok = zeros_ok and abs(quarter - 8 / math.pi**2) <= 1e-12
    check(6, ok, f"half-wavelength multiples vanish; omega(2, lambda/4) = {quarter:.12f}")


def test_criterion_07_interference_lobes():
    null_a = 1.0 / (100 * 0.5)
    null_b = 1.0 / (100 * 12.5)
    nulls_ok = (
        null_a == 0.02
        and null_b == 8e-4
        and null_a / null_b == 25.0
        and pairwise_interference(100, 0.5, np.pi / 2, math.acos(null_a), np.pi / 2, np.pi / 2) < 1e-20
    )
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        m = int(rng.integers(2, 64))
        spacing = rng.uniform(0.1, 13.0)
        th = rng.uniform(0, np.pi, size=2)
        ph = rng.uniform(0, 2 * np.pi, size=2)
        array = ArrayGeometry.ula(m, spacing)
        drones = [DroneState(distance=1.0, theta=th[i], phi=ph[i]) for i in range(2)]
        chan = los_channel(array, drones, 1.0)
        g = chan.g / np.sqrt(chan.beta)[None, :]
        brute = abs(np.vdot(g[:, 0], g[:, 1])) ** 2
        closed = pairwise_interference(m, spacing, th[0], ph[0], th[1], ph[1]) * m**2
        worst = max(worst, abs(brute - closed) / m**2)
    ok = nulls_ok and worst <= 1e-9
    check(7, ok, f"nulls {null_a}/{null_b} (ratio 25); worst normalized mismatch {worst:.2e}")


def test_criterion_08_capacity_cdf_domination():
    # Faithful transcription of the stated criterion.  The honest Monte
    # Carlo does NOT satisfy it for any physically plausible array spacing:
    # the line-of-sight CDF crosses the Rayleigh CDF instead of lying left
    # of it (domination holds only in the collision tail; forcing it needs
    # spacings below a twentieth of a wavelength).  Expected to fail; the
    # README's test section carries the analysis.
    start = time.time()
    scenario = default_fig_scenario("fig6")
    config = scenario.experiment_config(trials=10_000, seed=1)
    result = capacity_cdf(config)
    deciles = np.arange(0.1, 1.0, 0.1)
    q_los = np.asarray(result.los.quantile(deciles), dtype=float)
    q_ray = np.asarray(result.rayleigh.quantile(deciles), dtype=float)
    gap = float(result.rayleigh.quantile(0.5) - result.los.quantile(0.5))
    dominated = bool(np.all(q_los <= q_ray))
    runtime = time.time() - start
    ok = dominated and gap >= 0.5 and runtime < 60.0
    check(
        8,
        ok,
        f"dominated at all deciles: {dominated}, median gap {gap:+.2f} bit/s/Hz, "
        f"runtime {runtime:.0f} s",
    )


def test_criterion_09_sum_throughput_peak():
    scenario = default_fig_scenario("fig8a")
    base = scenario.experiment_config(trials=1, seed=0)
    from dataclasses import replace

    peaks = {}
    for snr in (1.0, 10.0):
        rows = sum_throughput_sweep(replace(base, data_snr=snr), range(1, 201))
        sums = np.array([r["sum_bps"] for r in rows])
        idx = int(np.argmax(sums))
        interior = 0 < idx < len(sums) - 1 and sums[idx] > sums[0] and sums[idx] > sums[-1]
        peaks[snr] = (idx + 1, float(sums[idx]), interior)
    rel = abs(peaks[10.0][1] - peaks[1.0][1]) / peaks[1.0][1]
    ok = peaks[1.0][2] and peaks[10.0][2] and rel <= 0.10
    check(
        9,
        ok,
        f"peaks at K = {peaks[1.0][0]} (0 dB) and K = {peaks[10.0][0]} (10 dB), "
        f"peak values differ by {rel:.1%}",
    )


def test_criterion_10_power_coverage():
    start = time.time()
    scenario = default_fig_scenario("fig8b")
    base = scenario.experiment_config(trials=100_000, seed=1)
    coverages = {}
    for label, config in _fig8b_configs(base):
        coverages[label] = power_coverage_cdf(config).coverage
    lin = coverages["identical_linear"]
    cir = coverages["pseudo_random_circular"]
    runtime = time.time() - start
    ok = 0.70 <= lin <= 0.86 and cir >= 0.999 and (cir - lin) >= 0.15 and runtime < 120.0
    check(
        10,
        ok,
        f"coverage linear {lin:.3f}, circular {cir:.4f}, gap {cir - lin:.3f}, "
        f"runtime {runtime:.0f} s",
    )


def test_criterion_11_effective_gain_maps():
    start = time.time()
    scenario = default_fig_scenario("fig10")
    base = scenario.experiment_config(trials=1, seed=0)
    azimuths = np.deg2rad(np.linspace(-180.0, 180.0, 181))
    elevations = np.deg2rad(np.linspace(-90.0, 90.0, 91))
    stats = {}
    for label, config in _fig10_configs(base):
        _, _, gain_db = effective_gain_map(config, azimuths, elevations)
        stats[label] = (float(np.min(gain_db)), float(np.max(gain_db)))
    lo_i, _ = stats["identical_linear"]
    lo_r, hi_r = stats["pseudo_random_circular"]
    runtime = time.time() - start
    ok = lo_i < -20.0 and 8.0 <= lo_r and hi_r <= 22.0 and runtime < 60.0
    check(
        11,
        ok,
        f"identical min {lo_i:.1f} dB; pseudo-random within [{lo_r:.1f}, {hi_r:.1f}] dB, "
        f"runtime {runtime:.0f} s",
    )


def test_criterion_12_mobility_loss():
    budget = LinkBudget(
        carrier_hz=2.4e9,
        bandwidth_hz=20e6,
        noise_density_w_hz=N0,
        data_snr=1.0,
        pilot_snr=1.0,
        kappa=1.0,
        chi_wc=0.1,
        speed_m_s=30.0,
        coherence_bw_hz=3e6,
        num_drones=100,
        tau_dl=1,
        tau_ctrl=0,
    )
    loss = mobility_throughput_loss(budget, 0.0, 30.0, 128)
    ok = 0 < loss < 0.02
    check(12, ok, f"throughput loss 0 -> 30 m/s is {loss:.2%}")


def test_criterion_13_swarm_sizing():
    scenario = load_scenario("disaster")
    plan = swarm_size(
        scenario.mission(), scenario.camera("survey"), scenario.get("mission.swath_edge")
    )
    ok = plan.single_drone_time_s > 7 * 3600 and plan.drones == 23
    check(
        13,
        ok,
        f"single drone needs {plan.single_drone_time_s / 3600:.2f} h; "
        f"{plan.drones} drones meet the 20 min deadline",
    )


def test_criterion_14_capacity_oracle_equivalence():
    rng = np.random.default_rng(99)
    worst = 0.0
    for _ in range(1000):
        m = int(rng.integers(1, 17))
        k = int(rng.integers(1, 9))
        g = rng.normal(size=(m, k)) + 1j * rng.normal(size=(m, k))
        p = rng.uniform(0.05, 20.0, size=k)
        worst = max(worst, float(np.max(np.abs(mrc_capacity(g, p) - eq_capacity_reference(g, p)))))
    ok = worst <= 1e-12
    check(14, ok, f"worst deviation from the independent transcription: {worst:.2e}")
