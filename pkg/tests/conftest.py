import numpy as np
import pytest

from lpvinterp.lpv_sim import ExcitationSpec, generate_dictionary, msd_kernel, msd_structure

# (criterion label, outcome) pairs filled in by test_acceptance.py
ACCEPTANCE_RESULTS = {}


@pytest.fixture(scope="session")
def msd():
    return msd_kernel()


@pytest.fixture(scope="session")
def structure():
    return msd_structure()


@pytest.fixture(scope="session")
def dictionary(msd):
    return generate_dictionary(msd, ExcitationSpec(seed=7, N_d=121))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for mark in report.keywords:
        if mark.startswith("AC") and mark[2:].isdigit():
            prev = ACCEPTANCE_RESULTS.get(mark, True)
            ACCEPTANCE_RESULTS[mark] = prev and report.passed


def pytest_configure(config):
    for i in range(1, 10):
        config.addinivalue_line("markers", f"AC{i}: acceptance criterion {i}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k[2:])):
        status = "PASS" if ACCEPTANCE_RESULTS[key] else "FAIL"
        terminalreporter.write_line(f"{key}: {status}")
