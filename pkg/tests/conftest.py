import numpy as np
import pytest

from actionsieve.filters import FilterConfig, load_verb_lexicon


@pytest.fixture(scope="session")
def lexicon():
    return load_verb_lexicon()


@pytest.fixture
def cfg():
    return FilterConfig()


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
