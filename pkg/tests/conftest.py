import os

import pytest
from hypothesis import HealthCheck, settings

from charprod.char_table import character_table
from charprod.zoo import CorpusSpec, corpus

settings.register_profile(
    "repo",
    max_examples=int(os.environ.get("CHARPROD_HYPOTHESIS_EXAMPLES", "60")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def corpus_groups():
    groups = corpus(CorpusSpec(max_order=128))
    for G in groups:
        character_table(G)
    return groups


# -- acceptance reporting ----------------------------------------------------

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number n")


def pytest_runtest_logreport(report):
    failed_early = report.when == "setup" and not report.passed
    if report.when != "call" and not failed_early:
        return
    marker = report.user_properties and dict(report.user_properties).get("criterion")
    if marker:
        n, title = marker
        _CRITERIA[n] = (title, "PASS" if report.passed else "FAIL")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            item.user_properties.append(("criterion", (m.args[0], m.args[1])))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, outcome = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d} {outcome}: {title}")
