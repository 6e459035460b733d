import pytest

from prefswaps.datasets import office_instance

ACCEPTANCE = {}


@pytest.fixture(scope="session")
def office():
    return office_instance()


@pytest.fixture
def acceptance():
    def record(number, title, ok, detail=""):
        ACCEPTANCE[number] = (title, ok, detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[number]
        line = f"[{'PASS' if ok else 'FAIL'}] AC{number}: {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
