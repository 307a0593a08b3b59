from pathlib import Path

import pytest

from weaktrace.corpus import load

from helpers import ACCEPTANCE_LINES


@pytest.fixture
def dekker():
    return load("dekker.lit")


@pytest.fixture
def corpus_dir():
    import weaktrace.corpus

    return Path(weaktrace.corpus.__file__).parent


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
