import random

import pytest
from hypothesis import HealthCheck, settings

from diffext import Derivation, Field
from diffext.groups import sample_sl2

settings.register_profile(
    "diffext",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("diffext")


@pytest.fixture(scope="session")
def K():
    return Field.rational(2)


@pytest.fixture(scope="session")
def t1(K):
    return K.var(1)


@pytest.fixture(scope="session")
def t2(K):
    return K.var(2)


@pytest.fixture(scope="session")
def d1(K):
    return Derivation.partial(K, 1)


@pytest.fixture(scope="session")
def d2(K):
    return Derivation.partial(K, 2)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def sl2_pool(K):
    """A fixed pool of sampled SL2 elements shared by the slower tests."""
    return sample_sl2(7, 60, field=K)


# Acceptance tests carry @pytest.mark.criterion(k, title); their outcomes are
# gathered here and printed as one PASS/FAIL line per criterion.
_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k, title): acceptance criterion k")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    k, title = mark.args
    entry = _criteria.setdefault(k, {"title": title, "ok": True, "failed": []})
    if report.when == "call" and report.failed or report.when == "setup" and report.failed:
        entry["ok"] = False
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_criteria):
        e = _criteria[k]
        line = f"criterion {k:2d}: {'PASS' if e['ok'] else 'FAIL'}  {e['title']}"
        if e["failed"]:
            line += f"  (failed: {', '.join(e['failed'])})"
        terminalreporter.write_line(line)
