from collections import Counter
from itertools import combinations

import pytest

from blockseq import Params, PartialSystem

FANO_BLOCKS = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]


@pytest.fixture
def fano():
    return PartialSystem(Params(7, 3, 2, 1), FANO_BLOCKS)


def naive_max_multiplicity(n, t, blocks):
    """Enumerate every t-subset of the vertex set and count the blocks holding it."""
    sets = [set(b) for b in blocks]
    counts = Counter()
    for ts in combinations(range(n), t):
        counts[ts] = sum(1 for b in sets if b.issuperset(ts))
    return max(counts.values(), default=0)


def naive_windows_good(blocks, order, ell, cyclic=True):
    """Literal definition: every window of ell consecutive vertices holds no block."""
    n = len(order)
    if ell > n:
        return False
    starts = range(n) if cyclic else range(n - ell + 1)
    sets = [set(b) for b in blocks]
    for i in starts:
        window = {order[(i + j) % n] for j in range(ell)}
        if any(b <= window for b in sets):
            return False
    return True


# one PASS/FAIL line per acceptance criterion, printed after the run
_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        number, title = mark.args
        _CRITERIA[number] = (title, rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, passed = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}")
