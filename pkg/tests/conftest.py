import time
from contextlib import contextmanager

import pytest

RESULTS = {}


@contextmanager
def _track(number, title, limit=None):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        if status == "PASS" and limit is not None and elapsed >= limit:
            status = "FAIL"
            RESULTS[number] = (status, title, elapsed, limit)
            raise AssertionError(f"criterion {number} took {elapsed:.1f}s, limit {limit}s")
        RESULTS[number] = (status, title, elapsed, limit)


@pytest.fixture
def criterion():
    return _track


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        status, title, elapsed, limit = RESULTS[number]
        budget = f" (limit {limit}s)" if limit else ""
        terminalreporter.write_line(f"{status} criterion {number}: {title} [{elapsed:.1f}s{budget}]")
