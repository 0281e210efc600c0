import json

import pytest

from querysum.config import RunConfig, load_config, worker_count
from querysum.errors import ConfigError, InputError


class TestLoadConfig:
    def test_defaults(self):
        cfg = load_config()
        assert cfg.lambda1 == 1.0 and cfg.lambda2 == 1.0
        assert cfg.alpha == 0.7
        assert cfg.shot_length_s == 5.0
        assert cfg.threshold_mode == "paper_stddev"

    def test_file_values_and_flag_override(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"lambda1": 2.0, "alpha": 0.6}), encoding="utf-8")
        cfg = load_config(path, {"lambda1": 0.5, "lambda2": None})
        assert cfg.lambda1 == 0.5     # flag wins
        assert cfg.alpha == 0.6       # file survives a None override
        assert cfg.lambda2 == 1.0     # default

    def test_unknown_file_key_rejected(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"lamda1": 2.0}), encoding="utf-8")
        with pytest.raises(ConfigError):
            load_config(path)

    def test_missing_file_rejected(self, tmp_path):
        with pytest.raises(InputError):
            load_config(tmp_path / "absent.json")

    @pytest.mark.parametrize(
        "field,value",
        [
            ("alpha", 1.5),
            ("alpha", 0.0),
            ("lambda1", -1.0),
            ("shot_length_s", 0.0),
            ("threshold_mode", "median"),
            ("phi1_mode", "x"),
            ("metric_mode", "x"),
            ("relevance_mode", "x"),
            ("video_duration_s", -5.0),
        ],
    )
    def test_out_of_range_values_rejected(self, field, value):
        with pytest.raises(ConfigError):
            RunConfig(**{field: value})

    def test_nested_configs_derive(self):
        cfg = RunConfig(solver_max_iters=7, solver_tol=1e-4, solver_init=0.3)
        solver = cfg.solver_config()
        assert (solver.max_iters, solver.tol, solver.init) == (7, 1e-4, 0.3)
        params = RunConfig(lambda1=0.2, lambda2=3.0).loss_params()
        assert (params.lambda1, params.lambda2) == (0.2, 3.0)


class TestWorkerCount:
    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("QUERYSUM_WORKERS", "3")
        assert worker_count() == 3

    def test_default_is_cpu_count(self, monkeypatch):
        monkeypatch.delenv("QUERYSUM_WORKERS", raising=False)
        assert worker_count() >= 1

    def test_bad_values_rejected(self, monkeypatch):
        monkeypatch.setenv("QUERYSUM_WORKERS", "zero")
        with pytest.raises(ConfigError):
            worker_count()
        monkeypatch.setenv("QUERYSUM_WORKERS", "0")
        with pytest.raises(ConfigError):
            worker_count()
