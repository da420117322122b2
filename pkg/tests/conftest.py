"""
Shared fixtures: the built-in presets and small helpers
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from presentation import Derivation, Step  # noqa: E402
from presentation.presets import preset, preset_spec  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: enlarged-budget acceptance runs")


@pytest.fixture(scope="session")
def monad():
    return preset("monad")


@pytest.fixture(scope="session")
def composite():
    return preset("composite-monad")


@pytest.fixture(scope="session")
def adjunction():
    return preset("adjunction")


@pytest.fixture(scope="session")
def intro_spec():
    return preset_spec("two-monads-intro")


def steps(pres, source, *applications):
    """Derivation from `source` applying (position, rule name) pairs in turn"""
    current = pres.string(source) if isinstance(source, str) else source
    start = current
    result = []
    for position, name in applications:
        step = Step.at(current, position, pres.rule(name))
        result.append(step)
        current = step.target
    return Derivation(start, tuple(result))


@pytest.fixture
def derive():
    return steps
