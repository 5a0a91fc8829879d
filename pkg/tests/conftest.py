import pytest
from hypothesis import settings

from frobsesh.catalog import hexagon_divisor, projective_space, product_fan
from frobsesh.toric import ToricDivisor

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

CRITERIA: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in CRITERIA:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")


@pytest.fixture
def hexagon():
    return hexagon_divisor()


@pytest.fixture
def p2_o1():
    return ToricDivisor(projective_space(2), (0, 0, 1))


@pytest.fixture
def p1xp1():
    return product_fan(projective_space(1), projective_space(1))
