import random

import pytest

from arrowlab import fixtures
from arrowlab.core import ArrowAlgebra, ArrowStructure


@pytest.fixture(scope="session")
def frames():
    return fixtures.frame_fixtures()


@pytest.fixture(scope="session")
def algebras():
    return fixtures.algebra_fixtures()


@pytest.fixture(scope="session")
def chain2():
    return fixtures.chain(2)


@pytest.fixture(scope="session")
def chain3():
    return fixtures.chain(3)


@pytest.fixture(scope="session")
def diamond():
    return fixtures.diamond()


@pytest.fixture(scope="session")
def small_algebras(algebras):
    """Carrier size at most three: used by the exhaustive oracles."""
    out = {k: v for k, v in algebras.items() if v.size <= 3}
    rng = random.Random(2024)
    for i in range(6):
        out[f"rand{i}"] = fixtures.random_chain_algebra(rng, rng.randint(1, 3), label=f"rand{i}")
    return out


def make_algebra(leq, imp, separator, names=None, label="test"):
    return ArrowAlgebra(ArrowStructure(leq, imp, names), separator, label=label)
