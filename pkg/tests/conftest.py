from __future__ import annotations

import pytest

from ietlab.family import schedule
from ietlab.measures import MeasureLab


@pytest.fixture(scope="session")
def lab_a5():
    """n=6, p=8, c1=64, m=6."""
    return MeasureLab(schedule(6, 8, 64, 6))


@pytest.fixture(scope="session")
def lab_a6():
    """n=6, p=8, c1=64, m=8."""
    return MeasureLab(schedule(6, 8, 64, 8))


@pytest.fixture(scope="session")
def lab_small():
    """n=6, p=7, c1=8, m=3."""
    return MeasureLab(schedule(6, 7, 8, 3))


_ACCEPTANCE = pytest.StashKey[dict]()


@pytest.fixture
def record(request):
    """Store one ``PASS``/``FAIL`` line per acceptance criterion."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, {})

    def _record(cid: str, ok: bool, detail: str):
        line = f"{cid} {'PASS' if ok else 'FAIL'}: {detail}"
        lines[cid] = line
        print(line)
        return ok

    return _record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for cid in sorted(lines, key=lambda c: int(c[1:])):
            terminalreporter.write_line(lines[cid])
