import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=300, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def naive_aacf(seq):
    """Plain double loop, shares nothing with the package code."""
    b = [int(x) for x in seq]
    n = len(b)
    return [sum(b[j] * b[j + u] for j in range(n - u)) for u in range(1, n)]


def naive_psl(seq):
    return max(abs(c) for c in naive_aacf(seq))


def naive_fitness(seq, p=4):
    return sum(abs(c) ** p for c in naive_aacf(seq))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# acceptance criteria report -------------------------------------------------

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        number, title = marker.args
        _ACCEPTANCE.append((number, title, item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, name, outcome in sorted(_ACCEPTANCE):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion {number}: {title} ({name})")
