"""Pytest fixtures for dclgroupoid tests."""

import numpy as np
import pytest

from dclgroupoid.systems import (
    PlateBallConfig,
    harmonic_oscillator,
    pair_point,
    pendulum_on_circle,
    plate_ball_initial_point,
    plate_ball_system,
    rail_arrival_height,
    rail_system,
)


@pytest.fixture
def rng():
    """Seeded generator so sampled tests are reproducible."""
    return np.random.default_rng(1234)


@pytest.fixture
def pendulum():
    return pendulum_on_circle(h=0.1)


@pytest.fixture
def pendulum_start(pendulum):
    """Pendulum pair starting at the bottom-right and moving clockwise."""
    return pair_point(pendulum, (1.0, 0.0), (np.cos(0.1), -np.sin(0.1)))


@pytest.fixture
def rail():
    return rail_system(h=0.1, kappa=0.5)


@pytest.fixture
def rail_start(rail):
    return pair_point(rail, (0.0, 1.0), (0.1, rail_arrival_height(1.0, 0.1, 0.5)))


@pytest.fixture
def oscillator():
    return harmonic_oscillator(h=0.1)


@pytest.fixture
def oscillator_start(oscillator):
    return pair_point(oscillator, (1.0,), (np.cos(0.1),))


@pytest.fixture
def plate_ball_config():
    return PlateBallConfig(r=1.0, Omega=0.0, c=0.0, h=0.1)


@pytest.fixture
def plate_ball(plate_ball_config):
    return plate_ball_system(plate_ball_config)


@pytest.fixture
def plate_ball_start(plate_ball_config):
    return plate_ball_initial_point(plate_ball_config, vx=0.1, vy=0.05)


@pytest.fixture
def config_file(tmp_path):
    """Write a dclgroupoid.yaml in tmp_path and return its path."""

    def write(body: str, name: str = "dclgroupoid.yaml"):
        path = tmp_path / name
        path.write_text(body, encoding="utf-8")
        return path

    return write
