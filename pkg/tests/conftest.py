"""Session fixtures and the acceptance scoreboard printed after the run."""
from __future__ import annotations

import pytest

from graphcases import corpus

# criterion number -> (passed, one-line detail)
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record_criterion(num: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[num] = (ok, detail)


@pytest.fixture(scope="session")
def criterion_corpus():
    """The randomized corpus shared by the equivalence and invariant suites."""
    return corpus(5000)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        word = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {word} - {detail}")
