"""
Shared fixtures. The modules are flat and imported by bare name, so the
repository root goes on sys.path first.
"""
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest  ## pylint: disable=wrong-import-position

from cover_model import HeightFamily  ## pylint: disable=wrong-import-position
from flag_complex import complete  ## pylint: disable=wrong-import-position
from flag_complex import cycle  ## pylint: disable=wrong-import-position
from flag_complex import path  ## pylint: disable=wrong-import-position
from projection import ModelProjection  ## pylint: disable=wrong-import-position


def pytest_configure(config):
    """Register the marker of the full-scale acceptance replay"""
    config.addinivalue_line("markers", "slow: full-scale acceptance replay (pytest -m slow)")


@pytest.fixture
def p3():
    """Path 0 - 1 - 2"""
    return path(3)


@pytest.fixture
def c4():
    """The 4-cycle"""
    return cycle(4)


@pytest.fixture
def k3():
    """The full 2-simplex"""
    return complete(3)


@pytest.fixture
def f1():
    """(0,0), (0,1), (1,0): the path 1 - 0 - 2, symmetric under the column swap"""
    return HeightFamily(2, ((0, 0), (0, 1), (1, 0)), closed=True)


@pytest.fixture
def f1_ps(f1):
    """Model projection structure of f1"""
    return ModelProjection(f1)


@pytest.fixture
def chain3():
    """(0,0,0), (0,1,1), (0,1,2): the path 0 - 1 - 2, convex-closed"""
    return HeightFamily(3, ((0, 0, 0), (0, 1, 1), (0, 1, 2)), closed=True)


@pytest.fixture
def chain3_ps(chain3):
    """Model projection structure of chain3"""
    return ModelProjection(chain3)


@pytest.fixture
def triangle():
    """(0,0,0), (0,0,1), (0,1,1): pairwise adjacent, a model 2-simplex"""
    return HeightFamily(3, ((0, 0, 0), (0, 0, 1), (0, 1, 1)), closed=True)
