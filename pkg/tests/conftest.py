from functools import lru_cache

import pytest

from lindep.gf import FieldSpec
from lindep.graph import MATRICES, build_graph
from lindep.spectra import charpoly_exact

GRID = (
    [(2, 1, n) for n in range(1, 8)]
    + [(3, 1, n) for n in range(1, 5)]
    + [(2, 2, n) for n in range(1, 4)]
    + [(5, 1, n) for n in range(1, 4)]
    + [(7, 1, n) for n in range(1, 3)]
    + [(2, 3, n) for n in range(1, 3)]
    + [(3, 2, 1), (11, 1, 2)]
)
SMALL_GRID = [c for c in GRID if (c[0] ** c[1]) ** c[2] <= 65]


def grid_id(case):
    p, k, n = case
    return f"p{p}k{k}n{n}"


@lru_cache(maxsize=None)
def field(p, k=1):
    return FieldSpec.create(p, k)


@lru_cache(maxsize=None)
def graph(p, k, n):
    return build_graph(field(p, k), n)


@lru_cache(maxsize=None)
def matrix(p, k, n, which):
    return MATRICES[which](graph(p, k, n))


@lru_cache(maxsize=None)
def charpoly(p, k, n, which):
    return charpoly_exact(matrix(p, k, n, which))


@pytest.fixture(params=GRID, ids=grid_id)
def grid_case(request):
    return request.param


@pytest.fixture(params=SMALL_GRID, ids=grid_id)
def small_case(request):
    return request.param
