from __future__ import annotations

import pytest

from deltacat import oracle
from deltacat.fixtures import all_fixtures


@pytest.fixture(scope="session")
def cats():
    return all_fixtures()


@pytest.fixture(scope="session")
def all_cofunctors(cats):
    return list(oracle.sweep_cofunctors(cats))


@pytest.fixture(scope="session")
def all_lenses(cats):
    return list(oracle.sweep_lenses(cats))
