"""Configuration loading, validation, and object builders."""

import json

import numpy as np
import pytest

from relaylink import config
from relaylink.config import ConfigError


def test_defaults_are_clean():
    cfg = config.default_config()
    assert config.validate(cfg) == []


def test_default_config_is_a_copy():
    cfg = config.default_config()
    cfg["d"] = 1.0
    assert config.default_config()["d"] == 300.0


def test_round_trip(tmp_path):
    cfg = config.default_config()
    cfg["e_t"] = 5e-5
    path = tmp_path / "cfg.json"
    path.write_text(config.dump_config(cfg), encoding="utf-8")
    loaded = config.load_config(str(path))
    assert loaded == cfg


def test_unknown_key_rejected(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text('{"no_such_knob": 1}', encoding="utf-8")
    with pytest.raises(ConfigError):
        config.load_config(str(path))


def test_overrides_and_coercion():
    cfg = config.load_config(None, {"e_t": "2e-5", "n_positions": "12"})
    assert cfg["e_t"] == 2e-5
    assert cfg["n_positions"] == 12
    with pytest.raises(ConfigError):
        config.load_config(None, {"e_t": "not-a-number"})


def test_parse_override():
    assert config.parse_override("e_t=1e-6") == ("e_t", 1e-6)
    assert config.parse_override('s_list=[1,2]') == ("s_list", [1, 2])
    assert config.parse_override("per_model=perfect") == ("per_model",
                                                          "perfect")
    with pytest.raises(ConfigError):
        config.parse_override("no-equals-sign")


def test_validate_flags_problems():
    cfg = config.default_config()
    cfg["p_move"] = 1.5
    cfg["e_low"] = 1e-3          # above e_max
    cfg["scenario"] = "bogus"
    cfg["warmup"] = cfg["slots"] + 1
    problems = config.validate(cfg)
    keys = {p.split(":")[0] for p in problems}
    assert {"p_move", "e_low", "scenario", "slots"} <= keys


def test_missing_file_raises():
    with pytest.raises(ConfigError):
        config.load_config("/no/such/file.json")


def test_non_object_config_raises(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text("[1, 2, 3]", encoding="utf-8")
    with pytest.raises(ConfigError):
        config.load_config(str(path))


def test_sweep_grid_scales():
    cfg = config.default_config()
    grid = config.sweep_grid(cfg)
    assert len(grid) == cfg["sweep_points"]
    assert grid[0] == pytest.approx(cfg["sweep_start"])
    assert grid[-1] == pytest.approx(cfg["sweep_stop"])
    ratios = grid[1:] / grid[:-1]
    np.testing.assert_allclose(ratios, ratios[0], rtol=1e-10)
    cfg["sweep_scale"] = "linear"
    lin = config.sweep_grid(cfg)
    np.testing.assert_allclose(np.diff(lin), np.diff(lin)[0], rtol=1e-8)
    cfg["sweep_points"] = 1
    assert list(config.sweep_grid(cfg)) == [cfg["sweep_start"]]


def test_builders_are_consistent():
    cfg = config.default_config()
    link = config.link_config(cfg)
    assert link.n_positions == cfg["n_positions"]
    assert link.e_s == cfg["e_t"] and link.e_r == cfg["e_t"]
    assert config.link_config(cfg, e_t=5e-5).e_s == 5e-5
    ts = config.timeshare_config(cfg, q=0.25)
    assert ts.q == 0.25 and ts.e_low == cfg["e_low"]
    sl = config.sleep_config(cfg, p_sleep=0.8)
    assert sl.p_sleep == 0.8


def test_two_dimensional_builder():
    cfg = config.load_config("configs/grid2d.json")
    assert config.validate(cfg) == []
    geom = config.build_geometry(cfg)
    assert geom.n_positions == cfg["nx"] * cfg["ny"]
    walk = config.build_walk(cfg)
    assert walk.n_positions == geom.n_positions


def test_shipped_configs_are_clean():
    import pathlib
    for path in pathlib.Path("configs").glob("*.json"):
        cfg = config.load_config(str(path))
        assert config.validate(cfg) == [], path
