"""Tests for configuration module."""

import pytest

from dclgroupoid.config import (
    RunConfig,
    find_config_path,
    flatten,
    get_default_config_yaml,
    load_config,
    validate_config,
)
from dclgroupoid.errors import ConfigurationError

PAIR_CONFIG = """\
dclgroupoid:
  system: pair
  h: 0.05
  steps: 20
  pair:
    example: oscillator
    q0: [1.0]
    q1: [0.99875]
    omega: 2.0
"""


class TestRunConfigDefaults:
    def test_defaults(self):
        config = RunConfig()
        assert config.system == "pair"
        assert config.h == 0.1
        assert config.steps == 100
        assert config.time_rule == "none"
        assert config.initial_lambda is None
        assert config.output == "trajectory.csv"

    def test_solver_defaults(self):
        solver = RunConfig().solver
        assert (solver.tol, solver.max_iter, solver.max_halvings) == (1e-10, 50, 8)

    def test_sections_are_independent(self):
        a, b = RunConfig(), RunConfig()
        a.pair.q0.append(1.0)
        assert b.pair.q0 == [0.0]


class TestFlatten:
    def test_nested(self):
        assert flatten({"solver": {"tol": 1e-8}, "h": 0.1}) == {"solver.tol": 1e-8, "h": 0.1}

    def test_deeply_nested(self):
        assert flatten({"a": {"b": {"c": 1}}}) == {"a.b.c": 1}


class TestLoadConfig:
    def test_pair_config(self, config_file):
        config = load_config(config_file(PAIR_CONFIG))
        assert config.system == "pair"
        assert config.h == 0.05
        assert config.steps == 20
        assert config.pair.example == "oscillator"
        assert config.pair.q0 == [1.0]
        assert config.pair.omega == 2.0
        # untouched sections keep their defaults
        assert config.plate_ball.r == 1.0

    def test_without_section_header(self, config_file):
        path = config_file("system: pair\nh: 0.2\npair:\n  example: free\n")
        config = load_config(path)
        assert config.h == 0.2

    def test_time_rule_and_lambda(self, config_file):
        path = config_file(
            "system: plate-ball\nh: 0.1\ntime:\n  rule: fixed\n"
            "initial:\n  lambda: [0.1, 0.2, 0.3]\n"
            "plate_ball:\n  r: 1.0\n  Omega: 0.5\n  c: 0.0\n"
        )
        config = load_config(path)
        assert config.time_rule == "fixed"
        assert config.initial_lambda == [0.1, 0.2, 0.3]
        assert config.plate_ball.Omega == 0.5

    def test_optimal_control(self, config_file):
        path = config_file(
            "system: optimal-control\nh: 0.1\noptimal_control:\n"
            "  retraction: exp\n  inertia: [2.0, 2.0, 1.0]\n  pin_z: 0.0\n"
        )
        config = load_config(path)
        assert config.optimal_control.retraction == "exp"
        assert config.optimal_control.inertia == [2.0, 2.0, 1.0]
        assert config.optimal_control.pin_z == 0.0

    def test_default_template_loads(self, config_file):
        config = load_config(config_file(get_default_config_yaml()))
        assert config.system == "plate-ball"
        assert config.plate_ball.vx == 0.1
        assert config.solver.tol == 1e-10

    def test_unknown_key(self, config_file):
        with pytest.raises(ConfigurationError, match="unknown key: 'pair.exmaple'"):
            load_config(config_file("system: pair\nh: 0.1\npair:\n  exmaple: free\n"))

    def test_missing_required(self, config_file):
        with pytest.raises(ConfigurationError, match="missing parameter: plate_ball.Omega"):
            load_config(config_file("system: plate-ball\nh: 0.1\nplate_ball:\n  r: 1.0\n  c: 0\n"))

    def test_empty_file_misses_required_keys(self, config_file):
        with pytest.raises(ConfigurationError, match="missing parameter: h"):
            load_config(config_file(""))

    @pytest.mark.parametrize(
        ("body", "message"),
        [
            ("system: ball\n", "invalid value for 'system'"),
            ("system: pair\nh: -0.1\npair:\n  example: free\n", "'h' must be positive"),
            ("system: pair\nh: 0.1\nsteps: 0\npair:\n  example: free\n", "'steps' must be >= 1"),
            ("system: pair\nh: 0.1\nsteps: 2.5\npair:\n  example: free\n", "'steps'"),
            ("system: pair\nh: true\npair:\n  example: free\n", "'h'"),
            ("system: pair\nh: 0.1\npair:\n  example: pendulum\n", "'pair.example'"),
            ("system: pair\nh: 0.1\npair:\n  example: free\n  q0: 1.0\n", "'pair.q0'"),
        ],
    )
    def test_invalid_values(self, config_file, body, message):
        with pytest.raises(ConfigurationError, match=message):
            load_config(config_file(body))

    def test_adaptive_needs_optimal_control(self, config_file):
        body = "system: pair\nh: 0.1\ntime:\n  rule: adaptive\npair:\n  example: free\n"
        with pytest.raises(ConfigurationError, match="adaptive"):
            load_config(config_file(body))

    def test_errors_are_collected(self, config_file):
        with pytest.raises(ConfigurationError) as exc:
            load_config(config_file("system: pair\nh: 0\nfoo: 1\npair:\n  example: free\n"))
        message = str(exc.value)
        assert "unknown key: 'foo'" in message
        assert "'h' must be positive" in message

    def test_invalid_yaml(self, config_file):
        with pytest.raises(ConfigurationError, match="invalid YAML"):
            load_config(config_file("system: [pair\n"))

    def test_not_a_mapping(self, config_file):
        with pytest.raises(ConfigurationError, match="mapping"):
            load_config(config_file("- pair\n- plate-ball\n"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError, match="not found"):
            load_config(tmp_path / "missing.yaml")

    def test_no_config_found(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        with pytest.raises(ConfigurationError, match="config init"):
            load_config()

    def test_discovered_config(self, config_file, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        config_file(PAIR_CONFIG)
        assert load_config().steps == 20


class TestFindConfigPath:
    def test_none(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert find_config_path() is None

    def test_search_order(self, config_file, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        config_file("h: 0.1\n", ".dclgroupoid.yml")
        assert find_config_path().name == ".dclgroupoid.yml"
        config_file("h: 0.1\n", "dclgroupoid.yaml")
        assert find_config_path().name == "dclgroupoid.yaml"


class TestValidateConfig:
    def test_valid(self, config_file):
        assert validate_config(config_file(PAIR_CONFIG)) == []

    def test_invalid(self, config_file):
        errors = validate_config(config_file("system: pair\nfoo: 1\n"))
        assert "unknown key: 'foo'" in errors
        assert "missing parameter: h" in errors

    def test_invalid_yaml_is_reported(self, config_file):
        errors = validate_config(config_file("system: [pair\n"))
        assert len(errors) == 1
        assert "invalid YAML" in errors[0]
