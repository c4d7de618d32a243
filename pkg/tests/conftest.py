import numpy as np
import pytest
from hypothesis import settings

from squarewell.core import Grid, PhysicalParams, SampledWaveFunction

settings.register_profile("repro", derandomize=True, deadline=None, max_examples=100)
settings.load_profile("repro")


@pytest.fixture
def natural():
    return PhysicalParams()


@pytest.fixture
def parabola():
    """sqrt(30) x (1 - x) on [0, 1]; normalized, energy 5, c_1 = 8 sqrt(15) / pi^3."""
    return SampledWaveFunction.from_function(lambda x: np.sqrt(30.0) * x * (1.0 - x), Grid(1001))


def sine_state(n, n_points=1001, params=None, amplitude=1.0):
    params = params or PhysicalParams()
    L = params.length
    return SampledWaveFunction.from_function(
        lambda x: amplitude * np.sqrt(2.0 / L) * np.sin(n * np.pi * x / L), Grid(n_points, params)
    )


_ACCEPTANCE_LINES = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "acceptance" in report.keywords:
        _ACCEPTANCE_LINES.extend(
            line for line in report.capstdout.splitlines() if line.startswith("AC")
        )


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
