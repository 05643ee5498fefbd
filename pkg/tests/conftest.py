import pytest

from dunklinv.dunkl import DunklContext
from dunklinv.groups import build_dihedral, build_symmetric
from dunklinv.invariants import GeneratorSet


@pytest.fixture(scope="session")
def s2():
    return build_symmetric(2)


@pytest.fixture(scope="session")
def s3():
    return build_symmetric(3)


@pytest.fixture(scope="session")
def s4():
    return build_symmetric(4)


@pytest.fixture(scope="session")
def i2_4():
    return build_dihedral(4)


@pytest.fixture(scope="session")
def ctx_s2(s2):
    return DunklContext(s2)


@pytest.fixture(scope="session")
def ctx_s3(s3):
    return DunklContext(s3)


@pytest.fixture(scope="session")
def ctx_i2_4(i2_4):
    return DunklContext(i2_4)


def dihedral_setup(m, equal=False):
    group = build_dihedral(m, equal=equal)
    return group, DunklContext(group), GeneratorSet.elementary(group)


def symmetric_setup(n, reduced=False):
    group = build_symmetric(n, reduced=reduced)
    return group, DunklContext(group), GeneratorSet.elementary(group)


# ---------------------------------------------------------------------------
# acceptance report: one PASS/FAIL line per criterion in the terminal summary

_criteria: dict = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            num, title = value
            status = "PASS" if report.passed else "FAIL"
            if _criteria.get(num, (None, "PASS"))[1] == "FAIL":
                status = "FAIL"  # parametrized criteria fail if any case fails
            _criteria[num] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, status = _criteria[num]
        terminalreporter.write_line(f"{status}  criterion {num:2d}: {title}")
