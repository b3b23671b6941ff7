from itertools import combinations, permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from permrank.errors import NotABijection, NotAdjacentValues, OrderMismatch, PairOutOfRange
from permrank.perm import (
    IndexPair,
    PairSet,
    Permutation,
    adjacency_label,
    adjacent_labels,
    adjacent_moves,
    adjacent_transposition,
    all_permutations,
    discordance_indicator,
    discordance_set,
    identity,
    index_pairs,
    inversion_set,
    lex_rank,
    ordinal_inverse,
    pair_count,
    pair_rank,
)

from conftest import perm_pair, perm_triple, perms

P = Permutation


def brute_dsc(p, q):
    """Oracle: compare relative orders directly."""
    n = len(p.values)
    out = set()
    for i, j in combinations(range(n), 2):
        if (p.values[i] < p.values[j]) != (q.values[i] < q.values[j]):
            out.add((i + 1, j + 1))
    return out


@pytest.mark.parametrize("bad", [(1, 1), (0, 1), (1, 3), (2, 3, 3)])
def test_rejects_non_bijections(bad):
    with pytest.raises(NotABijection):
        P(bad)


def test_rendering_and_access():
    p = P((1, 4, 2, 3))
    assert str(p) == "1 4 2 3"
    assert p.n == 4
    assert p.at(2) == 4
    assert p.position_of(4) == 2


def test_compose_is_function_composition():
    p, q = P((2, 3, 1)), P((3, 1, 2))
    r = p.compose(q)
    assert r.values == tuple(p.values[q.values[k] - 1] for k in range(3))


def test_ordinal_inverse_example():
    assert ordinal_inverse(P((2, 1, 3))) == P((2, 3, 1))


def test_adjacent_transposition_example():
    assert adjacent_transposition(P((1, 3, 2, 4)), IndexPair(2, 4)) == P((1, 4, 2, 3))


def test_adjacent_transposition_rejects_non_consecutive_values():
    with pytest.raises(NotAdjacentValues):
        adjacent_transposition(P((1, 3, 2, 4)), IndexPair(1, 2))


def test_pair_checks():
    with pytest.raises(PairOutOfRange):
        IndexPair(2, 2)
    with pytest.raises(PairOutOfRange):
        IndexPair(1, 5).check(4)
    assert IndexPair.of(3, 1) == IndexPair(1, 3)
    assert str(IndexPair(1, 3)) == "(1,3)"


def test_index_pairs_and_rank():
    pairs = index_pairs(5)
    assert len(pairs) == pair_count(5) == 10
    assert [pair_rank(pr, 5) for pr in pairs] == list(range(10))
    assert pairs == sorted(pairs)


def test_all_permutations_lexicographic():
    got = all_permutations(4)
    assert [p.values for p in got] == list(permutations(range(1, 5)))
    assert [lex_rank(p) for p in got] == list(range(24))


def test_pairset_algebra():
    a = PairSet(4, [IndexPair(1, 2), IndexPair(1, 3)])
    b = PairSet(4, [IndexPair(1, 3), IndexPair(3, 4)])
    assert str(a) == "{(1,2),(1,3)}"
    assert (a & b) == {IndexPair(1, 3)}
    assert len(a | b) == 3
    assert (a - b) == {IndexPair(1, 2)}
    assert (a ^ b) == {IndexPair(1, 2), IndexPair(3, 4)}
    assert not a.isdisjoint(b)
    assert a.mask == 0b11


def test_order_mismatch():
    with pytest.raises(OrderMismatch):
        discordance_set(P((1, 2)), P((1, 2, 3)))


def test_inversion_set_of_reverse_is_everything():
    assert len(inversion_set(P((4, 3, 2, 1)))) == 6
    assert len(inversion_set(identity(4))) == 0


def test_adjacent_labels_of_identity():
    assert adjacent_labels(identity(4)) == {IndexPair(1, 2), IndexPair(2, 3), IndexPair(3, 4)}


@given(perm_pair())
def test_discordance_matches_oracle(pq):
    p, q = pq
    got = discordance_set(p, q)
    assert {(pr.i, pr.j) for pr in got} == brute_dsc(p, q)
    for pr in index_pairs(p.n):
        assert discordance_indicator(p, q, pr) == (1 if pr in got else 0)


@given(perm_pair())
def test_discordance_symmetric_and_inverse_complement(pq):
    p, q = pq
    d = discordance_set(p, q)
    assert d == discordance_set(q, p)
    assert len(discordance_set(p, ordinal_inverse(q))) == pair_count(p.n) - len(d)
    assert d == inversion_set(p) ^ inversion_set(q)


@given(perm_triple())
def test_discordance_triangle_xor(pqr):
    p, q, r = pqr
    assert discordance_set(p, r) == discordance_set(p, q) ^ discordance_set(q, r)


@given(st.integers(1, 7).flatmap(perms))
def test_ordinal_inverse_involution(p):
    assert ordinal_inverse(ordinal_inverse(p)) == p
    assert len(discordance_set(p, ordinal_inverse(p))) == pair_count(p.n)


@given(st.integers(2, 7).flatmap(perms))
def test_adjacent_moves_flip_one_pair(p):
    moves = adjacent_moves(p)
    assert len(moves) == p.n - 1
    assert [lab for lab, _ in moves] == sorted(lab for lab, _ in moves)
    for lab, q in moves:
        assert discordance_set(p, q) == {lab}
        assert adjacency_label(p, q) == lab
        assert adjacent_transposition(q, lab) == p
    assert adjacent_labels(p) == {lab for lab, _ in moves}


@given(perm_pair(min_n=2))
def test_adjacency_label_none_for_non_neighbours(pq):
    p, q = pq
    if len(brute_dsc(p, q)) != 1:
        assert adjacency_label(p, q) is None
