"""Acceptance criteria 1-10, each timed against its budget.

Every test prints exactly one ``criterion k: PASS|FAIL`` line (visible even
under output capture).
"""
import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations, permutations

import pytest

from permrank.conjecture import additive_chains, antipodes, check_conditions, embed_sn, isometry_search_n3
from permrank.graph import (
    build_graph,
    disjoint_condition,
    is_vertex_transitive_check,
    lies_between_metric,
    union_condition,
)
from permrank.perm import (
    IndexPair,
    Permutation,
    adjacent_labels,
    adjacent_transposition,
    all_permutations,
    discordance_set,
    ordinal_inverse,
)
from permrank.quadruples import (
    check_enumeration,
    generic_diametrical_criterion,
    is_pseudolinear,
    is_symmetric_labeling,
    label_multiplicity_condition,
    quadruples_from_cycle,
)
from permrank.verify import random_permutation, random_rational, random_weights
from permrank.weights import distance, generic_weights, kendall_tau_weights, zero_distance_witness

from conftest import ALPHA, BETA, DELTA, GAMMA, s6_cycle, s8_cycle

pytestmark = pytest.mark.acceptance

P = Permutation


@contextmanager
def criterion(capsys, k, limit, title):
    start = time.perf_counter()
    status, note = "FAIL", ""
    try:
        yield
        elapsed = time.perf_counter() - start
        if elapsed < limit:
            status = "PASS"
        else:
            note = " (over budget)"
    except BaseException as exc:
        note = f" ({type(exc).__name__})"
        raise
    finally:
        elapsed = time.perf_counter() - start
        with capsys.disabled():
            print(f"\ncriterion {k}: {status} {elapsed:.2f}s / {limit}s  {title}{note}")
    assert elapsed < limit, f"criterion {k} took {elapsed:.2f}s, budget {limit}s"


def test_criterion_01_zero_weight_dichotomy(capsys):
    with criterion(capsys, 1, 5, "zero weight <=> distinct points at distance 0 on S_4"):
        rng = random.Random(1)
        pts = all_permutations(4)
        for _ in range(10):
            W = random_weights(rng, 4, strict=False)
            assert W.zero_pairs()
            p, q = zero_distance_witness(W)
            assert p != q and distance(W, p, q) == 0
        for _ in range(10):
            W = random_weights(rng, 4)
            assert zero_distance_witness(W) is None
            assert all(distance(W, p, q) > 0 for p in pts for q in pts if p != q)


def _identities(W, V, a, p, q):
    d = distance(W, p, q)
    ph, qh = ordinal_inverse(p), ordinal_inverse(q)
    return (
        distance(a * W, p, q) == d,
        distance(W + V, p, q) <= d + distance(V, p, q),
        distance(W, p, qh) == 1 - d,
        distance(W, ph, qh) == d,
        d <= 1,
        (d == 1) == (q == ph),
    )


def test_criterion_02_basic_identities(capsys):
    with criterion(capsys, 2, 10, "six identities: S_3 exhaustive x 10 seeds, 10^4 pairs of S_6"):
        s3 = all_permutations(3)
        for seed in range(10):
            rng = random.Random(seed)
            W, V, a = random_weights(rng, 3), random_weights(rng, 3), random_rational(rng)
            for p in s3:
                for q in s3:
                    assert all(_identities(W, V, a, p, q)), (seed, p, q)
        rng = random.Random(99)
        for batch in range(10):
            W, V, a = random_weights(rng, 6), random_weights(rng, 6), random_rational(rng)
            for _ in range(1000):
                p, q = random_permutation(rng, 6), random_permutation(rng, 6)
                if rng.random() < 0.05:
                    q = ordinal_inverse(p)
                assert all(_identities(W, V, a, p, q)), (batch, p, q)


def test_criterion_03_bfs_equals_discordance(capsys):
    with criterion(capsys, 3, 30, "BFS distance in G_n == |dsc| for n = 3, 4, 5"):
        for n in (3, 4, 5):
            g = build_graph(n)
            D = g.bfs()
            pairs = 0
            for a, p in enumerate(g.vertices):
                row = D[a]
                for b, q in enumerate(g.vertices):
                    assert row[b] == len(discordance_set(p, q))
                    pairs += 1
            assert pairs == math.factorial(n) ** 2


def test_criterion_04_betweenness(capsys):
    with criterion(capsys, 4, 60, "betweenness: 12,144 triples of S_4 x 10 weights, four verdicts agree"):
        rng = random.Random(4)
        g = build_graph(4)
        D = g.bfs()
        idx = g.index
        Ws = [random_weights(rng, 4) for _ in range(10)]
        triples = 0
        for p, m, q in permutations(g.vertices, 3):
            u = union_condition(p, m, q)
            dj = disjoint_condition(p, m, q)
            a, b, c = idx[p], idx[m], idx[q]
            geo = D[a, b] + D[b, c] == D[a, c]
            assert u == dj == geo, (p, m, q)
            for W in Ws:
                assert lies_between_metric(W, p, m, q) == u, (p, m, q, W)
            triples += 1
        assert triples == 24 * 23 * 22


def test_criterion_05_alpha_beta_gamma_delta(capsys):
    with criterion(capsys, 5, 1, "quadruple alpha..delta: discordance sets, diagonals, adjacent labels"):
        assert str(discordance_set(ALPHA, BETA)) == "{(1,2),(1,3),(1,4)}"
        assert str(discordance_set(GAMMA, DELTA)) == "{(1,2),(1,3),(1,4)}"
        assert str(discordance_set(BETA, GAMMA)) == "{(2,4),(3,4)}"
        assert str(discordance_set(ALPHA, DELTA)) == "{(2,4),(3,4)}"
        assert str(discordance_set(ALPHA, GAMMA)) == "{(1,2),(1,3),(1,4),(2,4),(3,4)}"
        assert str(discordance_set(BETA, DELTA)) == "{(1,2),(1,3),(1,4),(2,4),(3,4)}"
        cert = is_pseudolinear(kendall_tau_weights(4), [ALPHA, BETA, GAMMA, DELTA])
        assert cert is not None
        assert {frozenset(d) for d in cert.diagonals} == {frozenset((ALPHA, GAMMA)), frozenset((BETA, DELTA))}
        la, lg = adjacent_labels(ALPHA), adjacent_labels(GAMMA)
        assert la == {IndexPair(1, 2), IndexPair(2, 3), IndexPair(3, 4)}
        assert lg == {IndexPair(2, 4), IndexPair(2, 3), IndexPair(1, 3)}
        assert (la & lg) == {IndexPair(2, 3)}
        a1 = adjacent_transposition(ALPHA, IndexPair(2, 3))
        g1 = adjacent_transposition(GAMMA, IndexPair(2, 3))
        assert (a1, g1) == (P((1, 3, 2, 4)), P((4, 3, 2, 1)))
        # values 1, 2 of (1,3,2,4) sit at positions 1 and 3
        assert adjacent_labels(a1) == {IndexPair(1, 3), IndexPair(2, 3), IndexPair(2, 4)}
        assert adjacent_labels(g1) == {IndexPair(2, 3), IndexPair(1, 2), IndexPair(3, 4)}
        assert (adjacent_labels(a1) & adjacent_labels(g1)) == {IndexPair(2, 3)}


def test_criterion_06_s8_cycle(capsys):
    with criterion(capsys, 6, 5, "S_8 12-cycle: symmetric, multiplicities 6,2,2,2, 60 certificates"):
        c = s8_cycle()
        assert len(c) == 12 and len(set(c.vertices)) == 12
        assert is_symmetric_labeling(c)
        mult = label_multiplicity_condition(c)
        assert sorted((cnt for cnt, _ in mult.values()), reverse=True) == [6, 2, 2, 2]
        assert all(ok for _, ok in mult.values())
        for W in (kendall_tau_weights(8), random_weights(random.Random(6), 8)):
            certs = quadruples_from_cycle(W, c)
            assert len(certs) == math.comb(12, 2) - 6 == 60
            dist = lambda a, b: distance(W, a, b)
            for cert in certs:
                assert check_enumeration(cert.enumeration, dist) == (cert.s, cert.t)
                assert is_pseudolinear(W, cert.enumeration) is not None


def test_criterion_07_s6_negative_control(capsys):
    with criterion(capsys, 7, 1, "S_6 8-cycle: quadruple not pseudolinear, multiplicity 4 invalid"):
        c = s6_cycle()
        v = c.vertices
        quad = [v[0], v[2], v[4], v[6]]
        assert is_pseudolinear(kendall_tau_weights(6), quad) is None
        assert is_pseudolinear(generic_weights(6), quad) is None
        assert label_multiplicity_condition(c)[IndexPair(1, 2)] == (4, False)


def test_criterion_08_generic_criterion(capsys):
    with criterion(capsys, 8, 120, "generic weights: lhs <=> rhs over 10,626 subsets x 24 orderings"):
        W = generic_weights(4)
        subsets = 0
        positives = 0
        for quad in combinations(all_permutations(4), 4):
            subsets += 1
            for order in permutations(quad):
                lhs, rhs = generic_diametrical_criterion(W, order)
                assert lhs == rhs, order
                positives += lhs
        assert subsets == 10626
        assert positives > 0


def test_criterion_09_conjecture_n3(capsys):
    with criterion(capsys, 9, 10, "n = 3 tables: conditions hold, isometry round trip, chains of 3 edges"):
        rng = random.Random(9)
        for _ in range(10):
            W = random_weights(rng, 3)
            t = embed_sn(W)
            rep = check_conditions(t, 3)
            assert rep.overall, rep.failures
            res = isometry_search_n3(t)
            assert res.scale == 1
            idx = {lab: k for k, lab in enumerate(t.labels)}
            checked = 0
            for x, y in combinations(t.labels, 2):
                assert t.d(idx[x], idx[y]) == distance(res.weights, res.mapping[x], res.mapping[y])
                checked += 1
            assert checked == 15
            assert all(len(ch) == 4 for ch in rep.witness_chains.values())
            assert rep.longer_chain is None
            amap = antipodes(t)
            for z in range(6):
                assert additive_chains(t, z, amap[z], 3)
                assert additive_chains(t, z, amap[z], 4) == []


def test_criterion_10_structural_counts(capsys):
    with criterion(capsys, 10, 60, "G_n counts for n <= 6, vertex transitivity for n <= 5"):
        rng = random.Random(10)
        for n in range(1, 7):
            g = build_graph(n)
            assert len(g) == math.factorial(n)
            edges = list(g.edges())
            assert len(edges) == math.factorial(n) * (n - 1) // 2
            assert len({(u, v) for u, v, _ in edges}) == len(edges)
            for v in range(len(g)):
                nb = g.neighbors[v]
                assert len(set(nb.tolist())) == n - 1 and v not in nb
            if 2 <= n <= 5:
                for _ in range(5):
                    assert is_vertex_transitive_check(g, random_permutation(rng, n))
