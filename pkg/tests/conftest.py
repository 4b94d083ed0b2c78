import time

import pytest

from roamkit.graph import build_ball, build_coned_off_ball
from roamkit.presentation import cyclic_subgroup, presentation
from roamkit.roaming import build_roaming_pair

# filled by test_acceptance.py, printed at the end of the run
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def f2():
    return presentation(["a", "b"])


@pytest.fixture(scope="session")
def H(f2):
    return cyclic_subgroup(f2, "a")


@pytest.fixture(scope="session")
def z2():
    return presentation(["x", "y"], ["xyXY"])


@pytest.fixture(scope="session")
def f2_ball6(f2):
    return build_ball(f2, 6)


@pytest.fixture(scope="session")
def f2_ball8(f2):
    return build_ball(f2, 8)


@pytest.fixture(scope="session")
def coned4(f2, H):
    return build_coned_off_ball(f2, [H], 4)


@pytest.fixture(scope="session")
def coned6(f2, H):
    return build_coned_off_ball(f2, [H], 6)


@pytest.fixture(scope="session")
def coned8(f2, H):
    return build_coned_off_ball(f2, [H], 8)


def _pair(f2, H, mode):
    if mode == "coned":
        ball = build_coned_off_ball(f2, [H], 12)
    else:
        ball = build_ball(f2, 12)
    t0 = time.perf_counter()
    F, cert, cond = build_roaming_pair(ball, "b", "b", mode, H)
    return ball, F, cert, cond, time.perf_counter() - t0


# the two constructions on B_12 are shared by the roaming and acceptance tests
@pytest.fixture(scope="session")
def hyperbolic_pair(f2, H):
    return _pair(f2, H, "hyperbolic")


@pytest.fixture(scope="session")
def coned_pair(f2, H):
    return _pair(f2, H, "coned")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {msg}")
