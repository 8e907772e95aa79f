import pytest

from subword import builtin_poset, parse_word


@pytest.fixture(scope="session")
def lam():
    return builtin_poset("lambda")


@pytest.fixture(scope="session")
def fig3():
    return builtin_poset("fig3")


@pytest.fixture
def word():
    """Parse a word in a given poset: word(poset, "333")."""
    return parse_word
