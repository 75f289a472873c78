import pytest

_acceptance = []


@pytest.fixture
def criterion(request):
    """Record one pass/fail line for the acceptance summary."""

    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        _acceptance.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
