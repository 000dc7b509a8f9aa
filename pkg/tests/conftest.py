from __future__ import annotations

from pathlib import Path

import pytest

from horco import Base, Var, parse_trs
from horco.enumeration import enumerate_terms, subterm_closure

DATA = Path(__file__).parent / "data"

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    """Shared scoreboard; the terminal summary replays it after the run."""
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance scoreboard")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

NAT_SOURCE = """
sort B
symbol 0 : B
symbol s : B -> B
symbol m : B -> B -> B
"""


@pytest.fixture(scope="session")
def differentiation_trs():
    return parse_trs((DATA / "differentiation.trs").read_text())


@pytest.fixture(scope="session")
def lists_trs():
    return parse_trs((DATA / "lists_of_functions.trs").read_text())


@pytest.fixture(scope="session")
def process_trs():
    return parse_trs((DATA / "process_algebra.trs").read_text())


@pytest.fixture(scope="session")
def minus_trs():
    return parse_trs((DATA / "minus.trs").read_text())


@pytest.fixture(scope="session")
def nat_trs():
    # 0, s, m over a single sort; the workhorse first-order signature.
    return parse_trs(NAT_SOURCE)


@pytest.fixture(scope="session")
def nat_universe(nat_trs):
    """All first-order terms of size at most 5 over 0/s/m with two variables.

    Subterm-closed by construction (every subterm of a size-5 term fits the
    bound); 159 terms.
    """
    b = Base("B")
    vs = (Var("x", b), Var("y", b))
    universe = subterm_closure(enumerate_terms(nat_trs.signature, b, 5, vars=vs))
    assert len(universe) == 159
    return universe


@pytest.fixture(scope="session")
def minus_universe(minus_trs):
    b = Base("B")
    universe = subterm_closure(
        enumerate_terms(minus_trs.signature, b, 3, vars=minus_trs.variables)
    )
    assert len(universe) == 27
    return universe
