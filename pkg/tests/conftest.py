from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from zvertex import lattice
from zvertex.cocycle import build_cocycle


@pytest.fixture(scope="session")
def a1():
    return lattice.a1()


@pytest.fixture(scope="session")
def a2():
    return lattice.a2()


@pytest.fixture(scope="session")
def ii11():
    return lattice.hyperbolic_plane()


@pytest.fixture(scope="session")
def e8():
    return lattice.e8()


@pytest.fixture(scope="session")
def a1_cocycle(a1):
    return build_cocycle(a1)


@pytest.fixture(scope="session")
def ii11_cocycle(ii11):
    return build_cocycle(ii11)
