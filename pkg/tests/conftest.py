import pytest
from hypothesis import settings

# fixed example sequence so reruns are reproducible
settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")

_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def acceptance():
    """Record one pass/fail verdict per acceptance criterion."""
    def record(number: int, ok: bool, detail: str) -> bool:
        prev_ok = _ACCEPTANCE.get(number, (True, ""))[0]
        _ACCEPTANCE[number] = (prev_ok and ok, detail)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
