import pytest

from dualcx import build_dual_complex, generate_cycle_of_curves, simplicial_complex


@pytest.fixture
def triangle():
    """Boundary of a triangle: 3 vertices, 3 edges."""
    return simplicial_complex([(1, 2), (1, 3), (2, 3)])


@pytest.fixture
def full_triangle():
    return simplicial_complex([(1, 2, 3)])


@pytest.fixture
def parallel():
    return build_dual_complex(generate_cycle_of_curves(2))


# one pass/fail line per acceptance criterion, printed after the run
_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _CRITERIA[n] = ("PASS" if rep.outcome == "passed" else "FAIL", title)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        status, title = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {title}")
