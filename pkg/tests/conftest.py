import pytest

from paramine.bitext import AlignedLine
from paramine.counts import build_table


def lines_from(pairs, lang="de"):
    return [AlignedLine(target=t, pivot=p, pivot_lang=lang) for t, p in pairs]


@pytest.fixture
def t1_lines():
    return lines_from([("a", "x"), ("a", "x"), ("b", "x"), ("b", "y"), ("c", "y")])


@pytest.fixture
def t2_lines():
    return lines_from([("a", "u"), ("b", "u"), ("c", "v")], lang="fr")


@pytest.fixture
def t1_table(t1_lines):
    return build_table(t1_lines)


@pytest.fixture
def t2_table(t2_lines):
    return build_table(t2_lines)


@pytest.fixture
def skew_table():
    """One rare phrase aligned once to a pivot that a frequent phrase
    shares twenty-one times: conditional probability is lopsided while
    every symmetric score is not."""
    pairs = [("r1", "q")] + [("r2", "q")] * 21
    return build_table(lines_from(pairs))
