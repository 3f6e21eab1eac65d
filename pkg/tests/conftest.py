from __future__ import annotations

import pathlib

import pytest

from shfkit import Matrix, cyclic_difference_design, hypergraph_to_shf

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

# 0-based translation of the published 4x10 optimal {2,2} matrix
THM39_ROWS = (
    (0, 0, 0, 1, 1, 1, 2, 2, 2, 3),
    (0, 1, 2, 0, 1, 2, 0, 1, 2, 3),
    (0, 1, 2, 1, 2, 0, 2, 0, 1, 3),
    (0, 1, 2, 2, 0, 1, 1, 2, 0, 3),
)

# concrete realization of the F1 grid (a=b=c=d=0, distinct fillers)
F1_ROWS = (
    (0, 0, 1, 2),
    (0, 0, 1, 2),
    (1, 2, 0, 0),
    (1, 2, 0, 0),
)


@pytest.fixture(scope="session")
def example22() -> Matrix:
    return hypergraph_to_shf(cyclic_difference_design(7, (0, 1, 3)))


@pytest.fixture(scope="session")
def thm39() -> Matrix:
    return Matrix(THM39_ROWS, 4)


@pytest.fixture(scope="session")
def f1_instance() -> Matrix:
    return Matrix(F1_ROWS, 3)


@pytest.fixture(scope="session")
def fixtures_dir() -> pathlib.Path:
    return FIXTURES
