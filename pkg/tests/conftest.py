import contextlib
import time

import pytest

# (number, title, ok, detail) for every acceptance criterion that ran
ACCEPTANCE = []


class _Record:
    detail = ""


@pytest.fixture
def criterion():
    """Context manager that records one acceptance criterion as PASS or FAIL."""

    @contextlib.contextmanager
    def run(number, title):
        rec = _Record()
        start = time.perf_counter()
        ok = False
        try:
            yield rec
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            detail = f"{rec.detail} ({elapsed:.1f} s)".strip()
            ACCEPTANCE.append((number, title, ok, detail))
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}: {detail}")

    return run


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}: {detail}")
