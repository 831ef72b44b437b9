import pytest
from hypothesis import settings

from diracscat.model import PhysicalParams, PiecewiseConstant, TanhStep, ConstantPotential

settings.register_profile("repo", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def unit():
    """m = c = 1 with a modest h."""
    return PhysicalParams(1.0, 1.0, 0.1)


@pytest.fixture(scope="session")
def tanh():
    # 2(1 + tanh x)
    return TanhStep(0.0, 4.0)


@pytest.fixture(scope="session")
def step():
    return PiecewiseConstant([0.0], [0.0, 4.0])


@pytest.fixture(scope="session")
def free():
    return ConstantPotential(0.0)


# -- acceptance report: one PASS/FAIL line per criterion ------------------------

_verdicts = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.skipped:
        return
    if rep.when == "call" or rep.failed:
        num, title = mark.args
        prev = _verdicts.get(num, (title, True))
        _verdicts[num] = (title, prev[1] and rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_verdicts):
        title, ok = _verdicts[num]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {num:2d}: {title}")
