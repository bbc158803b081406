"""Run configuration: files, dotted overrides and validation errors."""
import json

import pytest

from pixelnav.config import RunConfig, apply_overrides, dump_run_config, load_run_config
from pixelnav.core.exceptions import ConfigError


class TestApplyOverrides:
    def test_values_parsed_as_json(self):
        data = apply_overrides({}, ["mppi.lambda=0.5", "sim.occlusion=false", "episode.world=a/b.json"])
        assert data == {"mppi": {"lambda": 0.5}, "sim": {"occlusion": False}, "episode": {"world": "a/b.json"}}

    def test_later_override_wins(self):
        data = apply_overrides({"mppi": {"dt": 0.1}}, ["mppi.dt=0.3", "mppi.dt=0.4"])
        assert data["mppi"]["dt"] == 0.4

    def test_lists(self):
        data = apply_overrides({}, ["mppi.q_ctrl=[2, 50]"])
        assert data["mppi"]["q_ctrl"] == [2, 50]

    @pytest.mark.parametrize("item", ["mppi.lambda", "=3"])
    def test_malformed(self, item):
        with pytest.raises(ConfigError):
            apply_overrides({}, [item])


class TestLoadRunConfig:
    def test_defaults(self):
        cfg = load_run_config()
        assert cfg == RunConfig()
        assert cfg.mppi.dt == 0.2
        assert cfg.sim.scale == 1.7

    def test_dump_and_load(self, tmp_path):
        cfg = load_run_config(overrides=["mppi.lambda=0.25", "episode.max_steps=7"])
        path = dump_run_config(cfg, tmp_path / "cfg" / "run.json")
        assert json.loads(path.read_text())["mppi"]["lambda"] == 0.25
        assert load_run_config(path) == cfg

    def test_overrides_apply_on_top_of_file(self, tmp_path):
        path = dump_run_config(load_run_config(overrides=["episode.max_steps=7"]), tmp_path / "run.json")
        cfg = load_run_config(path, overrides=["episode.l_sg=4"], seed=11)
        assert (cfg.episode.max_steps, cfg.episode.l_sg, cfg.episode.seed) == (7, 4, 11)

    def test_invalid_value_names_its_path(self):
        with pytest.raises(ConfigError, match="mppi.lambda"):
            load_run_config(overrides=["mppi.lambda=-1"])

    def test_unknown_backend_rejected(self):
        with pytest.raises(ConfigError, match="episode.path_method"):
            load_run_config(overrides=["episode.path_method=bfs"])

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            load_run_config(tmp_path / "absent.json")

    def test_not_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{nope")
        with pytest.raises(ConfigError):
            load_run_config(path)

    def test_top_level_must_be_object(self, tmp_path):
        path = tmp_path / "list.json"
        path.write_text("[1, 2]")
        with pytest.raises(ConfigError, match="object"):
            load_run_config(path)
