import itertools

import pytest
from hypothesis import strategies as st

from tournsol.tournament import Tournament, from_upper_key, permute


@st.composite
def tournaments(draw, min_order=1, max_order=7):
    n = draw(st.integers(min_order, max_order))
    key = draw(st.integers(0, 2 ** (n * (n - 1) // 2) - 1))
    return from_upper_key(n, key)


@st.composite
def tournament_with_alt(draw, min_order=1, max_order=7):
    t = draw(tournaments(min_order, max_order))
    return t, draw(st.integers(0, t.order - 1))


@st.composite
def relabeled(draw, min_order=1, max_order=7):
    t = draw(tournaments(min_order, max_order))
    perm = draw(st.permutations(range(t.order)))
    return t, list(perm)


def brute_certificate(t: Tournament, distinguished=None) -> tuple:
    """Smallest upper-triangle key over every relabeling (the slow, obvious oracle)."""
    best = None
    for perm in itertools.permutations(range(t.order)):
        if distinguished is not None and perm[distinguished] != 0:
            continue
        key = permute(t, perm).upper_key()
        best = key if best is None or key < best else best
    return best


@pytest.fixture
def c3():
    return Tournament.cyclic(3)


@pytest.fixture
def tr3():
    return Tournament.transitive(3)


_CRITERIA: dict[str, tuple[int, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


def pytest_runtest_logreport(report):
    item_marker = _MARKS.get(report.nodeid)
    if item_marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, title = item_marker
        _CRITERIA[report.nodeid] = (number, title, "PASS" if report.outcome == "passed" else "FAIL")


_MARKS: dict[str, tuple[int, str]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _MARKS[item.nodeid] = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome in sorted(_CRITERIA.values()):
        terminalreporter.write_line(f"criterion {number:2d}: {outcome}  {title}")
