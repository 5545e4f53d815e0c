import numpy as np
import pytest

from fracmoment.characters import build_table
from fracmoment.sieve import FactorSieve

_TABLES: dict = {}

# one line per acceptance criterion, echoed after the run (fd-level capture
# would swallow plain prints from passing tests)
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def table_for(q: int):
    if q not in _TABLES:
        _TABLES[q] = build_table(q)
    return _TABLES[q]


@pytest.fixture(scope="session")
def sieve10k():
    return FactorSieve.build(10**4)


@pytest.fixture(scope="session")
def sieve1m():
    return FactorSieve.build(10**6)


@pytest.fixture
def rng():
    return np.random.default_rng(20240901)
