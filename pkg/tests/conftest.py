import pytest

from pentagon.finalg import cyclic_group
from pentagon.pesol import SolutionTable

# criterion number -> (passed, detail), filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def xor_solution() -> SolutionTable:
    return SolutionTable.from_map(2, lambda x, y: (x, x ^ y))


def z2_mult_solution() -> SolutionTable:
    return SolutionTable.from_map(2, lambda x, y: (x ^ y, y))


def identity_pair_solution(n: int = 2) -> SolutionTable:
    return SolutionTable.from_map(n, lambda x, y: (x, y))


def flip_solution() -> SolutionTable:
    return SolutionTable.from_map(2, lambda x, y: (y, x))


@pytest.fixture
def xor():
    return xor_solution()


@pytest.fixture
def z2mult():
    return z2_mult_solution()


@pytest.fixture
def z2():
    return cyclic_group(2)


@pytest.fixture
def z3():
    return cyclic_group(3)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
