import pytest
from hypothesis import settings

from plane3jack.yangian_rep import boson_modes, build_gauge_rep

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def rep4():
    return build_gauge_rep(4, j_max=2)


@pytest.fixture(scope="session")
def rep5():
    return build_gauge_rep(5, j_max=3)


@pytest.fixture(scope="session")
def bm5():
    return boson_modes(build_gauge_rep(5, j_max=2))


@pytest.fixture(scope="session")
def table4():
    from plane3jack.jack_solver import build_table

    return build_table(4)


# one line per acceptance criterion, filled by test_acceptance
CRITERIA: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        ok, detail = CRITERIA[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
