import time
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "cnkit", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large]
)
settings.load_profile("cnkit")

_LINES: list[str] = []


@pytest.fixture(scope="session")
def warm_kernels():
    """Trigger JIT compilation once so timed criteria measure the work only."""
    from cnkit import kernels

    kernels.quartic_first(1, 1, 0, 2, 2, "literal")
    kernels.rep_count(5, 2, 1, 8)
    kernels.uvm_first(6, 3)
    kernels.prop44_hits(2)


@pytest.fixture
def criterion(warm_kernels):
    @contextmanager
    def run(number, title, limit_s=None):
        t0 = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            dt = time.perf_counter() - t0
            slow = limit_s is not None and dt >= limit_s
            status = "PASS" if ok and not slow else "FAIL"
            budget = f" (limit {limit_s:g} s)" if limit_s is not None else ""
            note = " [over time budget]" if ok and slow else ""
            line = f"{status}  criterion {number}: {title}  {dt:.3f} s{budget}{note}"
            _LINES.append(line)
            print(line)
        assert not slow, f"criterion {number} took {dt:.3f} s, budget {limit_s} s"

    return run


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
