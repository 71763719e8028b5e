import json
import os
import subprocess
import sys


def run_cli(*args, env=None, cwd=None):
    cmd = [sys.executable, "-m", "dronelink.cli", *args]
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(cmd, capture_output=True, text=True, env=full_env, cwd=cwd)


def test_help():
    cp = run_cli("--help")
    assert cp.returncode == 0
    assert "dronelink" in cp.stdout


def test_coherence_example(tmp_path):
    out = tmp_path / "coh.csv"
    cp = run_cli("coherence", "--v", "30", "--fc", "2.4e9", "--bc", "3e6", "--out", str(out))
    assert cp.returncode == 0, cp.stderr
    assert "tau = 6250" in cp.stdout
    body = out.read_text()
    assert body.startswith("# dronelink")
    assert "tau_symbols" in body
    assert ",6250" in body


def test_table2_racing(tmp_path):
    out = tmp_path / "t2.csv"
    cp = run_cli("table2", "--case", "racing", "--out", str(out))
    assert cp.returncode == 0, cp.stderr
    assert "M = 420" in cp.stdout
    assert "tau = 2586" in cp.stdout
    assert "R = 2.06 km" in cp.stdout
    text = out.read_text()
    assert "num_antennas,420," in text
    assert "coherence_interval_symbols,2586,2586" in text


def test_table2_disaster_and_sports(tmp_path):
    for case, tau in (("disaster", 9375), ("sports", 375)):
        out = tmp_path / f"{case}.csv"
        cp = run_cli("table2", "--case", case, "--out", str(out))
        assert cp.returncode == 0, cp.stderr
        assert f"tau = {tau}" in cp.stdout


def test_fig7_reruns_are_byte_identical(tmp_path):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    for out in (out1, out2):
        cp = run_cli("fig", "fig7", "--seed", "1", "--out", str(out))
        assert cp.returncode == 0, cp.stderr
    assert out1.read_bytes() == out2.read_bytes()


def test_fig3_writes_series(tmp_path):
    out = tmp_path / "fig3.csv"
    cp = run_cli("fig", "fig3", "--out", str(out))
    assert cp.returncode == 0, cp.stderr
    lines = out.read_text().splitlines()
    header = next(l for l in lines if not l.startswith("#"))
    assert header == "series,gsd_m,rate_bit_per_s"
    assert any(l.startswith("front_overlap_0.5,") for l in lines)


def test_override_roundtrip_in_metadata(tmp_path):
    out = tmp_path / "rate.csv"
    cp = run_cli(
        "rate", "--scenario", "disaster", "--override", "array.size=300",
        "--override", "drone.count=10", "--out", str(out),
    )
    assert cp.returncode == 0, cp.stderr
    text = out.read_text()
    assert "# overrides: array.size=300; drone.count=10" in text
    # the effective value is used by the computation
    assert "\n300,10," in text


def test_override_changes_scenario_hash(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert run_cli("range", "--scenario", "racing", "--out", str(a)).returncode == 0
    assert run_cli(
        "range", "--scenario", "racing", "--override", "drone.power_w=0.2", "--out", str(b)
    ).returncode == 0
    hash_a = next(l for l in a.read_text().splitlines() if l.startswith("# scenario"))
    hash_b = next(l for l in b.read_text().splitlines() if l.startswith("# scenario"))
    assert hash_a != hash_b


def test_unknown_scenario_key_is_config_error(tmp_path):
    cp = run_cli(
        "rate", "--scenario", "disaster", "--override", "array.shape=ring",
        "--out", str(tmp_path / "x.csv"),
    )
    assert cp.returncode == 2
    payload = json.loads(cp.stderr.strip().splitlines()[-1])
    assert payload["error"] == "config"
    assert not (tmp_path / "x.csv").exists()


def test_unknown_scenario_name_is_config_error(tmp_path):
    cp = run_cli("mission", "--scenario", "nonexistent", "--out", str(tmp_path / "x.csv"))
    assert cp.returncode == 2
    assert not (tmp_path / "x.csv").exists()


def test_infeasible_physics_exit_code(tmp_path):
    # swarm too large for the coherence interval: control+pilot overhead
    # exceeds tau
    cp = run_cli(
        "rate", "--scenario", "racing", "--override", "drone.count=2600",
        "--out", str(tmp_path / "x.csv"),
    )
    assert cp.returncode == 3
    payload = json.loads(cp.stderr.strip().splitlines()[-1])
    assert payload["error"] == "infeasible"
    assert not (tmp_path / "x.csv").exists()


def test_seed_env_fallback(tmp_path):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    env = {"DRONELINK_SEED": "77"}
    cp1 = run_cli("fig", "fig6", "--trials", "16", "--out", str(out1), env=env)
    cp2 = run_cli("fig", "fig6", "--trials", "16", "--seed", "77", "--out", str(out2))
    assert cp1.returncode == 0 and cp2.returncode == 0, cp1.stderr + cp2.stderr
    assert out1.read_bytes() == out2.read_bytes()
    assert "# seed: 77" in out1.read_text()


def test_scenario_file_roundtrip(tmp_path):
    from dronelink.scenarios import load_scenario

    scn = load_scenario("racing")
    path = tmp_path / "copy.scn"
    lines = [f"{k} = {v}" for k, v in scn.values.items()]
    path.write_text("\n".join(lines) + "\n")
    out = tmp_path / "out.csv"
    cp = run_cli("range", "--scenario", str(path), "--out", str(out))
    assert cp.returncode == 0, cp.stderr
    assert "2.06" in cp.stdout


def test_mission_disaster_summary(tmp_path):
    cp = run_cli("mission", "--scenario", "disaster", "--out", str(tmp_path / "m.csv"))
    assert cp.returncode == 0, cp.stderr
    assert "23 drones" in cp.stdout
    text = (tmp_path / "m.csv").read_text()
    assert "drones_needed,23,count" in text


def test_antennas_disaster(tmp_path):
    cp = run_cli("antennas", "--scenario", "disaster", "--out", str(tmp_path / "a.csv"))
    assert cp.returncode == 0, cp.stderr
    assert "M = " in cp.stdout


def test_power_command(tmp_path):
    cp = run_cli(
        "power", "--distance", "500", "--chi", "1.0", "--out", str(tmp_path / "p.csv")
    )
    assert cp.returncode == 0, cp.stderr
    assert "mW" in cp.stdout
