import sys

import pytest

from nordenlight import catalog


@pytest.fixture(scope="session")
def gl2r():
    return catalog.load_builtin("gl2r")


@pytest.fixture(scope="session")
def gl2c():
    return catalog.load_builtin("gl2c")


def pytest_terminal_summary(terminalreporter):
    module = next(
        (m for name, m in sys.modules.items() if name.endswith("test_acceptance") and hasattr(m, "RESULTS")),
        None,
    )
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
