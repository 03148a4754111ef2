import time
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=30,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Time an acceptance criterion, enforce its runtime limit and record a summary line."""

    @contextmanager
    def run(number: int, title: str, limit: float | None):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            elapsed = time.perf_counter() - start
            _ACCEPTANCE[number] = f"criterion {number} ({title}): FAIL after {elapsed:.2f} s"
            raise
        elapsed = time.perf_counter() - start
        ok = limit is None or elapsed < limit
        bound = "no limit" if limit is None else f"limit {limit:g} s"
        _ACCEPTANCE[number] = (f"criterion {number} ({title}): {'PASS' if ok else 'FAIL'} "
                               f"in {elapsed:.2f} s ({bound})")
        assert ok, f"runtime {elapsed:.2f} s exceeds {limit} s"

    return run


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[number])
