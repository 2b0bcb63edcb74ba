import pytest

from polyco.core import all_words
from polyco.engine import ExplorationBudget, explore
from polyco.fixtures import (abstract_states, braid, braid_qnf_map,
                             convergent_braid, no_fdt, two_letters,
                             two_letters_alt_qnf_map, two_letters_qnf_map)
from polyco.labelling import Labelling


@pytest.fixture(scope="session")
def braid_p():
    return braid()


@pytest.fixture(scope="session")
def braid_g(braid_p):
    budget = ExplorationBudget(max_word_len=9, max_states=500000,
                               max_depth=400)
    return explore(braid_p, all_words(braid_p, 7), budget=budget)


@pytest.fixture(scope="session")
def braid_lab():
    return Labelling.qnf(braid_qnf_map(max_len=9))


@pytest.fixture(scope="session")
def braid_completion(braid_p, braid_lab, braid_g):
    from polyco.completion import build_completion
    return build_completion(braid_p, braid_lab, braid_g)


@pytest.fixture(scope="session")
def ab_p():
    return two_letters()


@pytest.fixture(scope="session")
def ab_g(ab_p):
    budget = ExplorationBudget(max_word_len=8, max_states=100000,
                               max_depth=200)
    return explore(ab_p, all_words(ab_p, 6), budget=budget)


@pytest.fixture(scope="session")
def ab_lab():
    return Labelling.qnf(two_letters_qnf_map(max_len=8))


@pytest.fixture(scope="session")
def ab_alt_lab():
    return Labelling.qnf(two_letters_alt_qnf_map(max_len=8))


@pytest.fixture(scope="session")
def upsilon_p():
    return convergent_braid()


@pytest.fixture(scope="session")
def upsilon_g(upsilon_p):
    budget = ExplorationBudget(max_word_len=7, max_states=300000,
                               max_depth=200)
    return explore(upsilon_p, all_words(upsilon_p, 6), budget=budget)


@pytest.fixture(scope="session")
def lafont_p():
    return no_fdt()


@pytest.fixture(scope="session")
def lafont_g(lafont_p):
    budget = ExplorationBudget(max_word_len=5, max_states=100000,
                               max_depth=100)
    return explore(lafont_p, all_words(lafont_p, 4), budget=budget)


@pytest.fixture(scope="session")
def states_g():
    p = abstract_states()
    budget = ExplorationBudget(max_word_len=2, max_states=1000,
                               max_depth=50)
    return explore(p, all_words(p, 1), budget=budget)
