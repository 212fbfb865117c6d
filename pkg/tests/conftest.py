from __future__ import annotations

import pytest

from orthomorph import build_graph, enumerate_orthomorphisms, parse_group_spec
from orthomorph.orthomorphisms import Orthomorphism, from_cycles, parse_cycles

# Cycle notation over Z2 x Z4 labels, written out by hand from the templates.
THETA_STAR = "((0,1) (1,1) (0,3) (0,2) (1,3) (1,0) (1,2))"
PSI1 = "((1,3) (0,3) (0,1) (1,2))((1,0) (0,2) (1,1))"
PSI2 = "((0,3) (1,3) (1,1) (1,2))((1,0) (0,2) (0,1))"


def pair(label: str) -> tuple[int, int]:
    u, v = label.strip("()").split(",")
    return int(u), int(v)


def add(p: tuple[int, int], q: tuple[int, int]) -> tuple[int, int]:
    """Z2 x Z4 arithmetic on coordinate pairs, independent of the Cayley tables."""
    return (p[0] + q[0]) % 2, (p[1] + q[1]) % 4


def neg(p: tuple[int, int]) -> tuple[int, int]:
    return -p[0] % 2, -p[1] % 4


def ortho(group, cycles_text: str) -> Orthomorphism:
    return Orthomorphism(group, from_cycles(group, parse_cycles(group, cycles_text)))


@pytest.fixture(scope="session")
def G():
    return parse_group_spec("z2xz4")


@pytest.fixture(scope="session")
def orthos(G):
    return enumerate_orthomorphisms(G)


@pytest.fixture(scope="session")
def graph(orthos):
    return build_graph(orthos)


@pytest.fixture(scope="session")
def theta_star(G):
    return ortho(G, THETA_STAR)


@pytest.fixture(scope="session")
def psi1(G):
    return ortho(G, PSI1)


@pytest.fixture(scope="session")
def psi2(G):
    return ortho(G, PSI2)


@pytest.fixture(scope="session")
def klein():
    return parse_group_spec("klein")


@pytest.fixture(scope="session")
def z3():
    return parse_group_spec("cyclic:3")


# Acceptance criteria: (test name, description, PASS/FAIL), reported after the run.
_DESCRIPTIONS: dict[str, str] = {}
_ACCEPTANCE: list[tuple[str, str]] = []


def _is_criterion(nodeid: str) -> bool:
    return "test_acceptance.py::test_ac" in nodeid


def pytest_collection_modifyitems(items):
    for item in items:
        if _is_criterion(item.nodeid):
            doc = (item.function.__doc__ or "").strip().splitlines()
            _DESCRIPTIONS[item.name] = doc[0] if doc else ""


def pytest_runtest_logreport(report):
    if not _is_criterion(report.nodeid):
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        _ACCEPTANCE.append((report.nodeid.rsplit("::", 1)[1], "PASS" if report.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in _ACCEPTANCE:
        label = name.split("_")[1].upper()
        terminalreporter.write_line(f"{label} {status}  {_DESCRIPTIONS.get(name, '')}")
