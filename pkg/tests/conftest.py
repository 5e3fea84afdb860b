from __future__ import annotations

import pytest

from lfpsat.powerset import FiniteUniverse, PowersetLattice, list_basis
from lfpsat.samples import reachability_fixture

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def a3():
    return reachability_fixture()


@pytest.fixture
def a3_list():
    u = FiniteUniverse.of("xyz")
    lat = PowersetLattice(u)
    return u, lat, list_basis(u, lattice=lat)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
