import warnings

import pytest

from precursim.presets import preset
from precursim.scenario import run_scenario, validate_config


@pytest.fixture(scope="session")
def fig2_run():
    sc = validate_config(preset("fig2"))
    return sc, run_scenario(sc)


@pytest.fixture(scope="session")
def fig3_scenario():
    return validate_config(preset("fig3"))


@pytest.fixture(scope="session")
def s1_run():
    sc = validate_config(preset("s1"))
    return sc, run_scenario(sc)


@pytest.fixture(autouse=True)
def _strict_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter("default")
        yield


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(number, title, ok, detail):
        line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
