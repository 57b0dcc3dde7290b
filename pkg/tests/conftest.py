import re

import pytest

from dmorrey.corpus import integer_corpus, random_corpus

STANDARD_SEED = 20190319


@pytest.fixture(scope="session")
def corpus():
    return random_corpus(200, STANDARD_SEED)


@pytest.fixture(scope="session")
def small_corpus():
    return random_corpus(40, STANDARD_SEED + 1)


@pytest.fixture(scope="session")
def int_corpus():
    return integer_corpus(60, STANDARD_SEED + 2)


ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_log(request):
    """Collects one line per acceptance criterion; printed in the terminal summary."""
    return request.config.stash.setdefault(ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(re.search(r"criterion (\d+)", l)[1])):
            terminalreporter.write_line(line)
