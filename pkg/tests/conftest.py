from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from oracles import inertia  # noqa: E402

from lcsystems import VectorSystem  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


# -- random systems ------------------------------------------------------------------

def random_rows(rng: random.Random, n: int, max_b: int = 6, max_off: int = 3, density: float = 0.5):
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = -rng.randint(1, max_b)
        for j in range(i):
            if rng.random() < density:
                rows[i][j] = rows[j][i] = rng.randint(1, max_off)
    return rows


def random_at_most_hyperbolic(rng: random.Random, n: int, **kw):
    while True:
        rows = random_rows(rng, n, **kw)
        if inertia(rows)[0] <= 1:
            return rows


@st.composite
def integer_systems(draw, min_n=1, max_n=5, max_b=6, max_off=3):
    n = draw(st.integers(min_n, max_n))
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = -draw(st.integers(1, max_b))
        for j in range(i):
            rows[i][j] = rows[j][i] = draw(st.integers(0, max_off))
    return VectorSystem.from_matrix(rows)


# -- acceptance report ----------------------------------------------------------------

_ACCEPTANCE: dict[str, tuple[str, str]] = {}



def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = _ACCEPTANCE_MARKERS.get(report.nodeid)
    if marker is None:
        return
    outcome = "PASS" if report.outcome == "passed" else "FAIL"
    _ACCEPTANCE[report.nodeid] = (marker, outcome)


_ACCEPTANCE_MARKERS: dict[str, str] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m is not None:
            num, title = m.args
            _ACCEPTANCE_MARKERS[item.nodeid] = f"{num:>2}. {title}"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in sorted(_ACCEPTANCE.values()):
        terminalreporter.write_line(f"[{outcome}] {label}")


@pytest.fixture
def rng():
    return random.Random(20240611)
