import pytest

from twoslit.joint import normalize
from twoslit.params import paper_defaults

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def paper_cfg():
    return paper_defaults()


@pytest.fixture(scope="session")
def paper_state(paper_cfg):
    return normalize(paper_cfg)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
