"""Shared fixtures: the reference simulation is expensive (~10 s), so it is
computed once per session and reused by the unit and acceptance tests."""

import pathlib

import pytest

from optosync import RunSettings, SystemParams, simulate

CONFIG_DIR = pathlib.Path(__file__).resolve().parent.parent / "configs"


@pytest.fixture(scope="session")
def fig2_params():
    return SystemParams()


@pytest.fixture(scope="session")
def fig2_run():
    return RunSettings(horizon=500.0, output_dt=0.05, window_periods=10.0)


@pytest.fixture(scope="session")
def fig2_result(fig2_params, fig2_run):
    return simulate(fig2_params, fig2_run)


@pytest.fixture(scope="session")
def config_dir():
    return CONFIG_DIR


# One human-readable verdict line per acceptance criterion, echoed after the
# test summary so it survives pytest's output capture.
from _acceptance_report import ACCEPTANCE_VERDICTS  # noqa: E402


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_VERDICTS:
            terminalreporter.write_line(line)
