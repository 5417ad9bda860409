import pytest

from impairloss import ImpairmentBounds


@pytest.fixture
def reference_bounds():
    return ImpairmentBounds(0.1, 0.1, 0.1)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
