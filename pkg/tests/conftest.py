import math

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

P_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)
N_GRID = (1, 2, 3, 5)
PHASES_32 = tuple(2 * math.pi * i / 32 for i in range(32))


@pytest.fixture
def operating_point():
    from tiemzi.mzi import InterferometerConfig

    return InterferometerConfig(math.pi / 2, math.pi, 0.0, 0.0, 3)


ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def verdict(capsys):
    """Record and print one PASS/FAIL line per acceptance criterion, then assert."""

    def record(number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else "")
        ACCEPTANCE_LINES[number] = line
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
