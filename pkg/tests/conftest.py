import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from nonhalting.algebra import from_concrete, quotient  # noqa: E402
from nonhalting.fixtures import builtin_partition, paper_example, three_element_algebra  # noqa: E402
from nonhalting.pfun import PartialMap, full_model  # noqa: E402


def pmap(size, pairs):
    """Mapa parcial desde un diccionario punto ↦ imagen"""
    return PartialMap.from_entries([pairs.get(x) for x in range(size)], size)


@pytest.fixture
def three():
    return three_element_algebra()


@pytest.fixture(scope="session")
def quasiv():
    return paper_example("quasiv")


@pytest.fixture(scope="session")
def quasiv_algebra(quasiv):
    return from_concrete(quasiv)


@pytest.fixture(scope="session")
def quasiv_quotient(quasiv, quasiv_algebra):
    return quotient(quasiv_algebra, builtin_partition(quasiv, quasiv_algebra))


@pytest.fixture(scope="session")
def disagreeable():
    return paper_example("disagreeable")


@pytest.fixture(scope="session")
def disagreeable_algebra(disagreeable):
    return from_concrete(disagreeable)


@pytest.fixture(scope="session")
def disagreeable_quotient(disagreeable, disagreeable_algebra):
    return quotient(disagreeable_algebra, builtin_partition(disagreeable, disagreeable_algebra))


@pytest.fixture(scope="session")
def full1():
    return from_concrete(full_model(1))


@pytest.fixture(scope="session")
def full2():
    return from_concrete(full_model(2))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: corpus aleatorios y modelos de 3 puntos (deseleccionar con -m 'not slow')")
