import time
from contextlib import contextmanager

import pytest

_VERDICTS = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one verdict line per acceptance criterion, printed at session end."""
    verdicts = request.config.stash.setdefault(_VERDICTS, [])

    @contextmanager
    def judge(number, title, budget):
        start = time.perf_counter()
        ok = False
        try:
            yield
            elapsed = time.perf_counter() - start
            ok = elapsed < budget
            assert ok, f"criterion {number} took {elapsed:.2f}s, budget {budget}s"
        finally:
            elapsed = time.perf_counter() - start
            verdicts.append(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} "
                            f"({elapsed:.2f}s of {budget}s)")

    return judge


def pytest_terminal_summary(terminalreporter, config):
    verdicts = config.stash.get(_VERDICTS, [])
    if verdicts:
        terminalreporter.section("acceptance")
        for line in sorted(verdicts, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
