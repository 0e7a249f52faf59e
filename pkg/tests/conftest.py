"""Shared fixtures: each generated category is built once per session.

Fixtures return the (category, universe) pair the builder produces; tests
unpack what they need.  The acceptance tests also register one summary line
per criterion, printed at the end of the run.
"""

from __future__ import annotations

import pytest

from finext.algebra import build_category
from finext.fincat import dual_of, thin_category_from_poset

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def set3():
    return build_category("set", 3)


@pytest.fixture(scope="session")
def set4():
    return build_category("set", 4)


@pytest.fixture(scope="session")
def pointed3():
    return build_category("pointed", 3)


@pytest.fixture(scope="session")
def golden():
    """Posets with carriers 0 and 1: the two-chain as a thin category."""
    return build_category("poset", 1, include_empty=True)


@pytest.fixture(scope="session")
def golden_thin():
    return thin_category_from_poset([[True, True], [False, True]], ["0", "1"])


@pytest.fixture(scope="session")
def slat3():
    return build_category("slat", 3)


@pytest.fixture(scope="session")
def slat4():
    return build_category("slat", 4)


@pytest.fixture(scope="session")
def lat4():
    return build_category("lat", 4)


@pytest.fixture(scope="session")
def cpos3():
    return build_category("cpos", 3)


@pytest.fixture(scope="session")
def mon3():
    return build_category("mon", 3)


@pytest.fixture(scope="session")
def mon4():
    return build_category("mon", 4)


@pytest.fixture(scope="session")
def dual_set3(set3):
    return dual_of(set3[0])
