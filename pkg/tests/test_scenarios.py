import pytest

from dronelink.errors import ConfigError
from dronelink.scenarios import (
    BUILTIN_SCENARIOS,
    Scenario,
    load_scenario,
    parse_scenario,
    scenario_names,
)

MINIMAL = """
name = tiny
link.carrier_hz = 2.4e9
link.bandwidth_hz = 20e6
link.noise_density_dbm_hz = -167
link.data_snr_db = 0
link.coherence_bw_hz = 3e6
drone.count = 4
drone.speed_m_s = 20
drone.power_w = 0.1
"""


def test_bundled_scenarios_load_and_validate():
    assert set(BUILTIN_SCENARIOS) <= set(scenario_names())
    for name in BUILTIN_SCENARIOS:
        scn = load_scenario(name)
        assert scn.name == name
        assert scn.provenance
        scn.link_budget()  # must build without error


def test_parse_rejects_unknown_key():
    with pytest.raises(ConfigError):
        parse_scenario(MINIMAL + "array.shape = ring\n")


def test_parse_rejects_duplicate_and_bad_type():
    with pytest.raises(ConfigError):
        parse_scenario(MINIMAL + "drone.count = 5\ndrone.count = 6\n")
    with pytest.raises(ConfigError):
        parse_scenario(MINIMAL.replace("drone.count = 4", "drone.count = four"))


def test_parse_requires_mandatory_keys():
    with pytest.raises(ConfigError) as err:
        parse_scenario("name = incomplete\n")
    assert "missing required keys" in str(err.value)


def test_comments_and_blank_lines_ignored():
    scn = parse_scenario("# header\n\n" + MINIMAL + "\n# trailing\n")
    assert scn.require("drone.count") == 4


def test_defaults_and_overrides():
    scn = parse_scenario(MINIMAL)
    assert scn.get("array.spacing_wavelengths") == 0.5  # default
    patched = scn.with_overrides(["array.spacing_wavelengths=0.25", "drone.count=9"])
    assert patched.get("array.spacing_wavelengths") == 0.25
    assert patched.require("drone.count") == 9
    assert patched.overrides == ("array.spacing_wavelengths=0.25", "drone.count=9")
    # original untouched
    assert scn.require("drone.count") == 4


def test_override_rejects_malformed_and_unknown():
    scn = parse_scenario(MINIMAL)
    with pytest.raises(ConfigError):
        scn.with_overrides(["justakey"])
    with pytest.raises(ConfigError):
        scn.with_overrides(["no.such.key=1"])


def test_digest_stable_and_sensitive():
    a = parse_scenario(MINIMAL)
    b = parse_scenario(MINIMAL)
    assert a.digest() == b.digest()
    assert a.digest() != a.with_overrides(["drone.count=5"]).digest()


def test_int_keys_accept_scientific_notation():
    scn = parse_scenario(MINIMAL + "sim.trials = 1e4\n")
    assert scn.get("sim.trials") == 10_000
    assert isinstance(scn.get("sim.trials"), int)


def test_experiment_config_from_scenario():
    scn = load_scenario("disaster")
    config = scn.experiment_config(trials=10, seed=3)
    assert config.trials == 10
    assert config.seed == 3
    assert config.num_elements == 216
    assert config.shell.r_max == 500.0


def test_missing_optional_namespace_raises_cleanly():
    scn = parse_scenario(MINIMAL)
    with pytest.raises(ConfigError):
        scn.camera("survey")


def test_scenario_get_rejects_unknown_key():
    scn = Scenario(values={"name": "x"})
    with pytest.raises(ConfigError):
        scn.get("link.modulation")
