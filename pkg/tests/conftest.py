import json
from pathlib import Path

import pytest

import infalg as ia

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


def load_fixture(name: str):
    with open(FIXTURES / name) as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def multivariate():
    return ia.make_multivariate([2, 2])


@pytest.fixture(scope="session")
def string22():
    return ia.make_string_algebra(2, 2)


@pytest.fixture(scope="session")
def string23():
    return ia.make_string_algebra(2, 3)


@pytest.fixture(scope="session")
def chain_string():
    return ia.make_string_algebra(1, 3)


@pytest.fixture(scope="session")
def lattice_valued():
    u3 = ia.Universe(3)
    return ia.make_lattice_valued(
        u3,
        [ia.Partition.coarsest(u3), ia.Partition(u3, [[0], [1, 2]]),
         ia.Partition.finest(u3)],
        ia.chain(3, ["bot", "mid", "top"]))


@pytest.fixture(scope="session")
def footnote():
    from infalg.jsonio import load_instance
    return load_instance(load_fixture("footnote.json"))


@pytest.fixture(scope="session")
def set_algebra_fixture():
    from infalg.jsonio import load_instance
    return load_instance(load_fixture("set_algebra.json"))


@pytest.fixture(scope="session")
def part3():
    return list(ia.all_partitions(ia.Universe(3)))


@pytest.fixture(scope="session")
def part4():
    return list(ia.all_partitions(ia.Universe(4)))
