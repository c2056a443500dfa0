import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from shah.shrink_prng import DEFAULT_KEY  # noqa: E402

PARAGRAPH = (
    b"Konstantin Preslavsky University of Shumen has inherited a centuries-long "
    b"educational tradition dating back to the famous Pliska and Preslav Literary "
    b"School (10th c). Shumen University is one of the five classical public "
    b"universities in Bulgaria it is recognized as a leading university that offers "
    b"modern facilities for education, scientific researches and creative work."
)

ACCEPTANCE_LINES = []


@pytest.fixture
def key():
    return DEFAULT_KEY


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
