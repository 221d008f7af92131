import pytest
from hypothesis import HealthCheck, settings

from k3verify.catalog import default_catalog

settings.register_profile("suite", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("suite")

ACCEPTANCE_LINES: list = []


@pytest.fixture(scope="session")
def cat():
    return default_catalog()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
