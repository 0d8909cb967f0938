import pytest

from paritymu.corpus import random_corpus
from paritymu.synchronizing import generate_gn


@pytest.fixture(scope="session")
def corpus():
    return random_corpus(200, seed=0)


@pytest.fixture(scope="session")
def small_corpus(corpus):
    return corpus[:40]


@pytest.fixture(scope="session")
def g1():
    return generate_gn(1).game


@pytest.fixture(scope="session")
def g2():
    return generate_gn(2).game
