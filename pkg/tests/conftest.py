from __future__ import annotations

import sys

import pytest

from actionvalue.synthetic import SynthConfig, generate_corpus, generate_synthetic_game


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print the acceptance scorecard after the test summary."""
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "SCORECARD", None) if module else None
    if lines:
        terminalreporter.section("acceptance scorecard")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def corpus6():
    """Six seeded league games; shared by read-only tests."""
    return generate_corpus(11, 6)


@pytest.fixture(scope="session")
def corpus2():
    return generate_corpus(3, 2)


@pytest.fixture(scope="session")
def one_game():
    return generate_synthetic_game(SynthConfig(seed=5, n_actions=900))
