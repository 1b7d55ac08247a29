import pytest

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(autouse=True)
def _isolated_cache(monkeypatch):
    # keep tests independent of any developer cache directory
    monkeypatch.delenv("CYCLODET_CACHE_DIR", raising=False)
