"""Command-line front end.

Subcommands compute link budgets, mission plans, figure and table
reproductions; every run writes a CSV with a metadata header (version,
scenario hash, seed) and prints a one-paragraph summary.  Outputs are
deterministic: re-running a command with identical inputs yields
byte-identical files.

Exit codes: 0 success, 2 configuration error, 3 infeasible physics.
"""

import argparse
import json
import math
import os
import sys
import tempfile

from . import __version__
from .channel import coherence, inversion_power, free_space_beta
from .constants import db_to_linear, dbm_per_hz_to_w_per_hz, wavelength
from .errors import ConfigError, InfeasibleError
from .figures import FIG_BUILDERS, FIG_NAMES, build_table2, default_fig_scenario
from .mimo import antennas_required, coverage_range, ergodic_rate_lb
from .mission import (
    altitude_for_gsd,
    capture_interval,
    fov_from_gsd,
    frame_budget,
    image_area,
    image_bits,
    image_rate,
    swarm_size,
    video_rate,
)
from .scenarios import BUILTIN_SCENARIOS, Scenario, load_scenario, parse_scenario


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(path: str, header, rows, metadata) -> None:
    """Atomically write a CSV with '#' metadata lines; never leaves partials."""
    lines = [f"# {key}: {value}" for key, value in metadata.items()]
    lines.append(",".join(header))
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    payload = "\n".join(lines) + "\n"
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".dronelink-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _metadata(command: str, scenario: Scenario, seed, trials) -> dict:
    meta = {
        "dronelink": __version__,
        "command": command,
        "scenario": f"{scenario.name} (sha256:{scenario.digest()})",
        "overrides": "; ".join(scenario.overrides) if scenario.overrides else "(none)",
    }
    if seed is not None:
        meta["seed"] = seed
    if trials is not None:
        meta["trials"] = trials
    return meta


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scenario", help="bundled scenario name or path to a .scn file")
    parser.add_argument(
        "--override",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a scenario key (repeatable)",
    )
    parser.add_argument("--seed", type=int, help="master seed (env DRONELINK_SEED as fallback)")
    parser.add_argument("--trials", type=int, help="Monte Carlo trial count")
    parser.add_argument("--out", help="output CSV path (default: <command>.csv)")


def _resolve_scenario(args, default: Scenario | None = None) -> Scenario:
    if args.scenario:
        scenario = load_scenario(args.scenario)
    elif default is not None:
        scenario = default
    else:
        raise ConfigError("this command needs --scenario (a bundled name or a file path)")
    return scenario.with_overrides(args.override)


def _resolve_seed(args, scenario: Scenario) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("DRONELINK_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"DRONELINK_SEED must be an integer, got {env!r}") from None
    return scenario.get("sim.seed")


def _emit(args, command, scenario, header, rows, meta, summary, seed=None, trials=None) -> None:
    metadata = _metadata(command, scenario, seed, trials)
    metadata.update(meta)
    out = args.out or f"{command.split()[-1]}.csv"
    write_csv(out, header, rows, metadata)
    print(summary)
    print(f"wrote {out}")


_NEUTRAL = """
name = adhoc
link.carrier_hz = 2.4e9
link.bandwidth_hz = 20e6
link.noise_density_dbm_hz = -167
link.data_snr_db = 0
link.coherence_bw_hz = 3e6
drone.count = 1
drone.speed_m_s = 30
drone.power_w = 0.1
"""


def cmd_coherence(args) -> None:
    scenario = _resolve_scenario(args, parse_scenario(_NEUTRAL.strip()))
    v = args.v if args.v is not None else scenario.require("drone.speed_m_s")
    fc = args.fc if args.fc is not None else scenario.require("link.carrier_hz")
    bc = args.bc if args.bc is not None else scenario.require("link.coherence_bw_hz")
    budget = coherence(v, fc, bc)
    header = ["speed_m_s", "carrier_hz", "coherence_bw_hz", "coherence_time_s", "tau_symbols"]
    rows = [(v, fc, bc, budget.t_c, budget.tau)]
    summary = f"T_c = {budget.t_c * 1e3:.4g} ms, tau = {budget.tau} symbols"
    _emit(args, "coherence", scenario, header, rows, {}, summary)


def cmd_range(args) -> None:
    scenario = _resolve_scenario(args, parse_scenario(_NEUTRAL.strip()))
    pt = args.pt if args.pt is not None else scenario.require("drone.power_w")
    fc = args.fc if args.fc is not None else scenario.require("link.carrier_hz")
    bw = args.b if args.b is not None else scenario.require("link.bandwidth_hz")
    snr_db = args.snr_db if args.snr_db is not None else scenario.require("link.data_snr_db")
    noise_dbm = (
        args.noise_dbm_hz
        if args.noise_dbm_hz is not None
        else scenario.require("link.noise_density_dbm_hz")
    )
    r = coverage_range(pt, fc, bw, db_to_linear(snr_db), dbm_per_hz_to_w_per_hz(noise_dbm))
    header = ["tx_power_w", "carrier_hz", "bandwidth_hz", "target_snr_db", "noise_dbm_hz", "range_m"]
    rows = [(pt, fc, bw, snr_db, noise_dbm, r)]
    _emit(args, "range", scenario, header, rows, {}, f"single-antenna range R = {r / 1e3:.3f} km")


def _scenario_frame(scenario: Scenario):
    tau = coherence(
        scenario.require("drone.speed_m_s"),
        scenario.require("link.carrier_hz"),
        scenario.require("link.coherence_bw_hz"),
    ).tau
    return frame_budget(
        tau,
        scenario.require("drone.count"),
        ctrl_fraction=scenario.get("frame.ctrl_fraction"),
        ul_data_fraction=scenario.get("frame.ul_data_fraction"),
        dl_pilots=scenario.get("frame.dl_pilots"),
    )


def cmd_antennas(args) -> None:
    scenario = _resolve_scenario(args)
    frame = _scenario_frame(scenario)
    budget = scenario.link_budget(tau_dl=frame.tau_dl, tau_ctrl=frame.tau_ctrl)
    q_tar = args.qtar if args.qtar is not None else video_rate(scenario.camera())
    result = antennas_required(budget, q_tar)
    achieved = ergodic_rate_lb(budget, result.count)
    header = ["target_rate_bit_per_s", "antennas_exact", "antennas", "achieved_rate_bit_per_s"]
    rows = [(q_tar, result.exact, result.count, achieved)]
    summary = (
        f"target {q_tar / 1e6:.2f} Mbit/s per drone needs M = {result.count} antennas "
        f"(exact root {result.exact:.1f}); bound at M = {result.count} gives "
        f"{achieved / 1e6:.2f} Mbit/s"
    )
    _emit(args, "antennas", scenario, header, rows, {}, summary)


def cmd_rate(args) -> None:
    scenario = _resolve_scenario(args)
    frame = _scenario_frame(scenario)
    budget = scenario.link_budget(tau_dl=frame.tau_dl, tau_ctrl=frame.tau_ctrl)
    m = args.m if args.m is not None else scenario.get("array.size")
    per_drone = ergodic_rate_lb(budget, m)
    if per_drone <= 0:
        raise InfeasibleError("frame overhead exceeds the coherence interval")
    k = budget.num_drones
    header = ["num_antennas", "num_drones", "per_drone_bit_per_s", "sum_bit_per_s"]
    rows = [(m, k, per_drone, k * per_drone)]
    summary = (
        f"M = {m}, K = {k}: {per_drone / 1e6:.2f} Mbit/s per drone, "
        f"{k * per_drone / 1e9:.3f} Gbit/s sum"
    )
    _emit(args, "rate", scenario, header, rows, {}, summary)


def cmd_mission(args) -> None:
    scenario = _resolve_scenario(args)
    camera = scenario.camera("survey")
    mission = scenario.mission()
    video_camera = scenario.camera("camera")
    altitude = altitude_for_gsd(mission.gsd_m, camera.focal_length_m, camera.pixel_size_m)
    fov = fov_from_gsd(mission.gsd_m, camera.r_px, camera.r_py)
    area = image_area(mission.gsd_m, camera.r_px, camera.r_py)
    bits = image_bits(camera)
    interval = capture_interval(mission.gsd_m, camera.r_py, mission.front_overlap, mission.speed_m_s)
    rate = image_rate(camera, mission.gsd_m, mission.front_overlap, mission.speed_m_s)
    plan = swarm_size(mission, camera, scenario.get("mission.swath_edge"))
    vrate = video_rate(video_camera)
    header = ["quantity", "value", "unit"]
    rows = [
        ("altitude", altitude, "m"),
        ("field_of_view", fov, "m"),
        ("image_area", area, "m^2"),
        ("image_bits", bits, "bit"),
        ("capture_interval", interval, "s"),
        ("image_rate", rate, "bit_per_s"),
        ("video_rate", vrate, "bit_per_s"),
        ("single_drone_time", plan.single_drone_time_s, "s"),
        ("drones_needed", plan.drones, "count"),
    ]
    summary = (
        f"altitude {altitude:.1f} m, field of view {fov:.1f} m, one drone needs "
        f"{plan.single_drone_time_s / 3600:.2f} h; {plan.drones} drones finish within "
        f"{mission.deadline_s / 60:.0f} min"
    )
    _emit(args, "mission", scenario, header, rows, {}, summary)


def cmd_fig(args) -> None:
    scenario = _resolve_scenario(args, default_fig_scenario(args.figure))
    seed = _resolve_seed(args, scenario)
    trials = args.trials if args.trials is not None else scenario.get("sim.trials")
    header, rows, meta, summary = FIG_BUILDERS[args.figure](scenario, trials, seed)
    _emit(args, f"fig {args.figure}", scenario, header, rows, meta, summary, seed=seed, trials=trials)


def cmd_table2(args) -> None:
    scenario = load_scenario(args.case).with_overrides(args.override)
    header, rows, meta, summary = build_table2(scenario)
    _emit(args, "table2", scenario, header, rows, meta, summary)


def cmd_power(args) -> None:
    scenario = _resolve_scenario(args, parse_scenario(_NEUTRAL.strip()))
    lam = wavelength(scenario.require("link.carrier_hz"))
    beta = free_space_beta(args.distance, lam)
    p = inversion_power(
        beta,
        args.chi,
        db_to_linear(scenario.require("link.data_snr_db")),
        scenario.noise_density_w_hz(),
        scenario.require("link.bandwidth_hz"),
    )
    header = ["distance_m", "chi_mean", "beta", "tx_power_w"]
    rows = [(args.distance, args.chi, beta, p)]
    if math.isinf(p):
        summary = "out of coverage: total gain/polarization blackout"
    else:
        summary = f"required uplink power at {args.distance:g} m: {p * 1e3:.4g} mW"
    _emit(args, "power", scenario, header, rows, {}, summary)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dronelink",
        description=(
            "Link budgets and Monte Carlo link-level simulation for massive-MIMO "
            "ground stations serving drone swarms"
        ),
    )
    parser.add_argument("--version", action="version", version=f"dronelink {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coherence", help="coherence time and samples per interval")
    p.add_argument("--v", type=float, help="drone speed in m/s")
    p.add_argument("--fc", type=float, help="carrier frequency in Hz")
    p.add_argument("--bc", type=float, help="coherence bandwidth in Hz")
    _add_common(p)
    p.set_defaults(func=cmd_coherence)

    p = sub.add_parser("range", help="single-antenna coverage range")
    p.add_argument("--pt", type=float, help="transmit power in W")
    p.add_argument("--fc", type=float, help="carrier frequency in Hz")
    p.add_argument("--b", type=float, help="bandwidth in Hz")
    p.add_argument("--snr-db", type=float, help="target data SNR in dB")
    p.add_argument("--noise-dbm-hz", type=float, help="noise density in dBm/Hz")
    _add_common(p)
    p.set_defaults(func=cmd_range)

    p = sub.add_parser("antennas", help="antenna count for a target per-drone rate")
    p.add_argument("--qtar", type=float, help="target per-drone rate in bit/s (default: camera video rate)")
    _add_common(p)
    p.set_defaults(func=cmd_antennas)

    p = sub.add_parser("rate", help="ergodic-rate lower bound for a scenario")
    p.add_argument("--m", type=int, help="antenna count (default: scenario array size)")
    _add_common(p)
    p.set_defaults(func=cmd_rate)

    p = sub.add_parser("mission", help="camera mission geometry and swarm sizing")
    _add_common(p)
    p.set_defaults(func=cmd_mission)

    p = sub.add_parser("power", help="channel-inversion uplink power at a distance")
    p.add_argument("--distance", type=float, required=True, help="drone distance in m")
    p.add_argument("--chi", type=float, default=1.0, help="mean gain/mismatch factor")
    _add_common(p)
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("fig", help="reproduce a figure as CSV")
    p.add_argument("figure", choices=FIG_NAMES)
    _add_common(p)
    p.set_defaults(func=cmd_fig)

    p = sub.add_parser("table2", help="design-table parameters for a bundled case")
    p.add_argument("--case", required=True, help=f"one of {', '.join(BUILTIN_SCENARIOS)}")
    p.add_argument(
        "--override", action="append", default=[], metavar="KEY=VALUE", help="override a scenario key"
    )
    p.add_argument("--out", help="output CSV path")
    p.set_defaults(func=cmd_table2)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except ConfigError as exc:
        print(json.dumps({"error": "config", "message": str(exc)}), file=sys.stderr)
        return 2
    except InfeasibleError as exc:
        print(json.dumps({"error": "infeasible", "message": str(exc)}), file=sys.stderr)
        return 3
    except ValueError as exc:
        print(json.dumps({"error": "config", "message": str(exc)}), file=sys.stderr)
        return 2
    except OSError as exc:
        print(json.dumps({"error": "io", "message": str(exc)}), file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
