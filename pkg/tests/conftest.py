import pytest
from hypothesis import HealthCheck, settings

from tmcorr.memo import MemoStore

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# Lines printed by the acceptance suite, echoed once more in the terminal summary
# so they survive output capture.
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def store():
    return MemoStore()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
