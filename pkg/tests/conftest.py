import pytest

from graphspectra import gen_bipartite_b, gen_graph_c, gen_star
from graphspectra.data import karate_factions, karate_graph


@pytest.fixture(scope="session")
def karate():
    return karate_graph()


@pytest.fixture(scope="session")
def karate_truth():
    return karate_factions()


@pytest.fixture(scope="session")
def graph_c18():
    return gen_graph_c(18)


@pytest.fixture(scope="session")
def star18():
    return gen_star(18)


@pytest.fixture(scope="session")
def bipartite_b():
    return gen_bipartite_b()
