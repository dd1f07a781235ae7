import sys

import pytest

from qgrass.exactmath import parse_ratfunc
from qgrass.ncalg import NCPoly


@pytest.fixture
def q():
    return parse_ratfunc("q")


@pytest.fixture
def u2():
    return lambda i, j: NCPoly.gen(2, i, j)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
