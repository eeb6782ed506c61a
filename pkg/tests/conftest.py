import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from perpnet import Tau, parallel_classes, attach_perpendicularity, build_affine_plane, construct_gk, GkConfig  # noqa: E402
from perpnet.constructions import build_net_from_mols, cyclic_mols, delete_parallel_classes, grid  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def ag3():
    return build_affine_plane(3)


@pytest.fixture(scope="session")
def ag5():
    return build_affine_plane(5)


@pytest.fixture(scope="session")
def ag3_tau(ag3):
    return attach_perpendicularity(ag3, Tau.parse("(0 1)(2 3)"))


@pytest.fixture(scope="session")
def net54(ag5):
    return delete_parallel_classes(ag5, [4, 5])


@pytest.fixture(scope="session")
def net54_tau(net54):
    return attach_perpendicularity(net54, Tau.parse("(0 1)(2 3)"))


@pytest.fixture(scope="session")
def mols_net():
    return build_net_from_mols(cyclic_mols(3, 2))


@pytest.fixture(scope="session")
def grid3():
    return grid(3)


@pytest.fixture(scope="session")
def grid3_perp(grid3):
    # rows ⊥ columns: the swap on the two classes, built directly since
    # attach_perpendicularity refuses degree two.
    rows, cols = parallel_classes(grid3).classes
    return grid3.with_perp([(i, j) for i in rows for j in cols])


@pytest.fixture(scope="session")
def g4(ag3_tau):
    return construct_gk(ag3_tau, GkConfig(4))


@pytest.fixture(scope="session")
def g4_star(ag3_tau):
    return construct_gk(ag3_tau, GkConfig(4, starred=True))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
