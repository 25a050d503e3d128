import os
import sys
import time
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from hfforcing import EMPTY, HSet  # noqa: E402

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def hsets(max_rank=4, width=3):
    """Sets of rank at most ``max_rank``."""
    if max_rank <= 0:
        return st.just(EMPTY)
    return st.one_of(
        st.just(EMPTY),
        st.lists(hsets(max_rank - 1, width), max_size=width).map(HSet))


# -- acceptance bookkeeping ---------------------------------------------------

ACCEPTANCE = {}


@contextmanager
def criterion(number, title, limit):
    """Record pass/fail and wall time for one acceptance criterion."""
    start = time.perf_counter()
    entry = ACCEPTANCE[number] = {"title": title, "limit": limit, "ok": False}
    try:
        yield entry
        entry["elapsed"] = time.perf_counter() - start
        entry["ok"] = entry["elapsed"] < limit
    finally:
        entry.setdefault("elapsed", time.perf_counter() - start)
        status = "PASS" if entry["ok"] else "FAIL"
        print(f"ACCEPTANCE {number}: {status} {title} "
              f"({entry['elapsed']:.2f}s, limit {limit}s)")
    assert entry["ok"], f"criterion {number} exceeded its {limit}s limit"


@pytest.fixture
def acceptance():
    return criterion


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        e = ACCEPTANCE[n]
        status = "PASS" if e["ok"] else "FAIL"
        terminalreporter.write_line(
            f"[{status}] {n:>2}. {e['title']} "
            f"({e['elapsed']:.2f}s, limit {e['limit']}s)")
