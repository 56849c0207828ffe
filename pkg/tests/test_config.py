"""Scenario configuration: defaults, validation, YAML round-trips and the
named sweep profiles."""
import math

import pytest
import yaml

from aoatrack.beam import beamwidth
from aoatrack.config import (
    PROFILES,
    ConfigError,
    ScenarioConfig,
    apply_profile,
    dump_config,
    load_config,
)


class TestDefaults:
    def test_default_scenario_is_valid(self):
        cfg = ScenarioConfig()
        cfg.validate()
        assert cfg.beam.power_i0 == 0.01
        assert cfg.beam.wavelength == 1.55e-6
        assert cfg.receiver.array_area == 4e-6
        assert cfg.receiver.detector_count == 4
        assert cfg.noise.sigma_n == 1e-6
        assert cfg.mc.trials == 2000
        assert cfg.mc.seed == 42

    def test_default_beam_objects(self):
        cfg = ScenarioConfig()
        p = cfg.beam_params()
        assert beamwidth(p) == pytest.approx(1e-3, rel=1e-12)
        g = cfg.geometry()
        assert g.extent == pytest.approx(2e-3, rel=1e-12)
        n = cfg.noise_model()
        assert n.mode == "constant"
        assert n.sigma_p == 0.0

    def test_theta_grid(self):
        cfg = ScenarioConfig()
        grid = cfg.theta_grid()
        assert len(grid) == 400
        assert grid[0] == 0.0
        assert grid[-1] == pytest.approx(0.025, rel=1e-12)
        cfg.sweep.count = 1
        assert cfg.theta_grid() == [cfg.sweep.start]


class TestValidation:
    def test_collects_every_error(self):
        cfg = ScenarioConfig()
        cfg.beam.power_i0 = -1.0
        cfg.receiver.detector_count = 0
        cfg.noise.mode = "bogus"
        cfg.sweep.count = 0
        cfg.mc.trials = 0
        with pytest.raises(ConfigError) as exc:
            cfg.validate()
        joined = str(exc.value)
        assert len(exc.value.errors) >= 5
        for fragment in ("power_i0", "detector_count", "mode", "count", "trials"):
            assert fragment in joined

    def test_beamwidth_waist_exclusivity(self):
        cfg = ScenarioConfig()
        cfg.beam.waist = 1e-4  # both set now
        with pytest.raises(ConfigError):
            cfg.validate()
        cfg.beam.waist = None
        cfg.beam.beamwidth = None  # neither set
        with pytest.raises(ConfigError):
            cfg.validate()

    def test_sweep_bounds(self):
        cfg = ScenarioConfig()
        cfg.sweep.stop = math.pi
        with pytest.raises(ConfigError):
            cfg.validate()

    def test_group_lists(self):
        cfg = ScenarioConfig(beamwidth_list=[])
        with pytest.raises(ConfigError):
            cfg.validate()
        cfg = ScenarioConfig(detector_count_list=[4, 0])
        with pytest.raises(ConfigError):
            cfg.validate()


class TestSerialization:
    def test_round_trip_identity(self, tmp_path):
        cfg = ScenarioConfig(beamwidth_list=[1e-3, 5e-3])
        cfg.beam.link_distance = 123.0
        cfg.noise.sigma_p = 1e-4
        path = str(tmp_path / "scenario.yaml")
        dump_config(cfg, path)
        again = load_config(path)
        assert again == cfg

    def test_from_dict_defaults_fill_in(self):
        cfg = ScenarioConfig.from_dict({"beam": {"link_distance": 50.0}})
        assert cfg.beam.link_distance == 50.0
        assert cfg.beam.power_i0 == 0.01

    def test_waist_replaces_beamwidth(self):
        cfg = ScenarioConfig.from_dict({"beam": {"waist": 4.933e-4}})
        assert cfg.beam.beamwidth is None
        assert beamwidth(cfg.beam_params()) == pytest.approx(1e-3, rel=1e-3)

    def test_unknown_keys_rejected(self):
        with pytest.raises(ConfigError) as exc:
            ScenarioConfig.from_dict({"beam": {"frequency": 1.0}, "bogus": {}})
        joined = str(exc.value)
        assert "beam.frequency" in joined
        assert "bogus" in joined

    def test_yaml_file_contents(self, tmp_path):
        path = str(tmp_path / "scenario.yaml")
        dump_config(ScenarioConfig(), path)
        with open(path, "r", encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
        assert set(data) == {"beam", "receiver", "noise", "sweep", "mc"}


class TestProfiles:
    def test_all_profiles_resolve_and_validate(self):
        assert set(PROFILES) == {"fig5", "fig6", "fig7", "fig8", "fig9", "fig10"}
        for name in PROFILES:
            cfg = ScenarioConfig.from_dict(apply_profile({}, name))
            cfg.validate()

    def test_unknown_profile(self):
        with pytest.raises(ConfigError):
            apply_profile({}, "fig99")

    def test_explicit_config_wins_over_profile(self):
        data = apply_profile({"beam": {"power_i0": 0.5}}, "fig5")
        assert data["beam"]["power_i0"] == 0.5
        assert data["beamwidth_list"] == [1e-3, 5e-3, 10e-3]

    def test_wide_beam_jitter_profile(self):
        cfg = ScenarioConfig.from_dict(apply_profile({}, "fig10"))
        assert cfg.beam.beamwidth == 0.2
        assert cfg.sigma_p_list is not None
        assert 0.0 in cfg.sigma_p_list
