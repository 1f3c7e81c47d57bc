from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hypermod import Matroid, PointConfig, delete, matroid_from_points, pg3, uniform, vamos


@pytest.fixture(scope="session")
def pg32():
    return pg3(2)


@pytest.fixture(scope="session")
def pg33():
    return pg3(3)


@pytest.fixture(scope="session")
def del32(pg32):
    return delete(pg32, {0})


@pytest.fixture(scope="session")
def del33a(pg33):
    return delete(pg33, {0})


@pytest.fixture(scope="session")
def del33ab(pg33):
    return delete(pg33, {0, 1})


@pytest.fixture(scope="session")
def vamos_m():
    return vamos()


@pytest.fixture(scope="session")
def two_cover():
    # Two three-point lines over GF(2) sharing exactly point 2 and jointly
    # covering the ground set: the classic rank-3 fixture whose shared
    # point is a degenerate flat.
    cfg = PointConfig(
        prime=2,
        dim=3,
        points=((1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 1, 1)),
        name="two_cover",
    )
    return matroid_from_points(cfg)


@pytest.fixture(scope="session")
def direct_sum_u12():
    # Two parallel classes side by side: {0,1} and {2,3}.
    return Matroid(4, [[frozenset()], [{0, 1}, {2, 3}], [{0, 1, 2, 3}]])


@pytest.fixture(scope="session")
def loop_fixture():
    # Rank 1 on three elements: 2 is a loop, 0 and 1 are parallel.
    return Matroid(3, [[{2}], [{0, 1, 2}]])
