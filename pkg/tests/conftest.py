import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from permrank import Cycle, IndexPair, Permutation, WeightMatrix
from permrank.perm import pair_count

P = Permutation


@pytest.fixture
def rng():
    return random.Random(20260415)


# four points of S_4 forming a pseudolinear quadruple off every symmetric cycle
ALPHA = P((1, 2, 3, 4))
BETA = P((4, 1, 2, 3))
GAMMA = P((4, 2, 3, 1))
DELTA = P((1, 3, 4, 2))

S8_LABELS = [(1, 2), (3, 4), (1, 2), (5, 6), (1, 2), (7, 8)] * 2
S6_LABELS = [(1, 2), (3, 4), (1, 2), (5, 6)] * 2


def s8_cycle() -> Cycle:
    return Cycle.from_transpositions(P(tuple(range(1, 9))), S8_LABELS)


def s6_cycle() -> Cycle:
    return Cycle.from_transpositions(P(tuple(range(1, 7))), S6_LABELS)


def ip(i, j):
    return IndexPair(i, j)


# -- hypothesis strategies ---------------------------------------------------

def perms(n):
    return st.permutations(range(1, n + 1)).map(lambda v: P(tuple(v)))


@st.composite
def perm_pair(draw, max_n=7, min_n=1):
    n = draw(st.integers(min_n, max_n))
    return draw(perms(n)), draw(perms(n))


@st.composite
def perm_triple(draw, max_n=6, min_n=2):
    n = draw(st.integers(min_n, max_n))
    return draw(perms(n)), draw(perms(n)), draw(perms(n))


rationals = st.fractions(min_value=0, max_value=20, max_denominator=12)
positive_rationals = st.fractions(min_value=Fraction(1, 12), max_value=20, max_denominator=12)


def weights(n, strict=True):
    elem = positive_rationals if strict else rationals
    m = pair_count(n)
    return st.lists(elem, min_size=m, max_size=m).filter(lambda ws: sum(ws) > 0).map(
        lambda ws: WeightMatrix(n, tuple(ws))
    )
