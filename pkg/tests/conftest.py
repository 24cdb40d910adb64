import pytest

from mgtpr.cli import bundled_lexicon_text
from mgtpr.fock import FockMachine
from mgtpr.grammar import parse_lexicon
from mgtpr.processor import derive
from mgtpr.schemes import make_faithful_scheme


@pytest.fixture(scope="session")
def lex():
    return parse_lexicon(bundled_lexicon_text())


@pytest.fixture(scope="session")
def trace(lex):
    return derive(lex)


@pytest.fixture(scope="session")
def fm(lex):
    return FockMachine(make_faithful_scheme(lex), lex)
