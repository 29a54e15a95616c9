import functools

import pytest

from reflmon.mutation_class import standard_class


@functools.lru_cache(maxsize=None)
def catalog(family: str, n: int):
    return standard_class(family, n)


@pytest.fixture(scope="session")
def get_catalog():
    return catalog
