from __future__ import annotations

import pytest

from cartanpoints import ACCEPTANCE_TYPES
from cartanpoints.search import enumerate_type

# Enumerations are cached per process by enumerate_type; this fixture just
# gives tests one shared spelling for "the full point set of a type".


@pytest.fixture(scope="session")
def suite_points():
    def get(name: str):
        return enumerate_type(name)[0]

    return get


@pytest.fixture(scope="session")
def suite_reports():
    def get(name: str):
        return enumerate_type(name)[1]

    return get


SUITE_NAMES = [str(t) for t in ACCEPTANCE_TYPES]
