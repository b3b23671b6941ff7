"""
Seeded property suites behind ``permrank verify``.

Each suite returns a list of :class:`Check` records. Small orders are
checked exhaustively; larger ones fall back to seeded samples so a run
stays within seconds.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Callable

import numpy as np

from .conjecture import check_conditions, embed_sn, isometry_search_n3
from .errors import PermRankError
from .graph import (
    build_graph,
    count_shortest_paths,
    disjoint_condition,
    graph_distance,
    is_shortest_path,
    is_vertex_transitive_check,
    lies_between_dsc,
    lies_between_metric,
    shortest_paths,
    simple_cycles,
    union_condition,
)
from .perm import (
    Permutation,
    all_permutations,
    discordance_indicator,
    discordance_set,
    index_pairs,
    ordinal_inverse,
    pair_count,
)
from .quadruples import (
    antipodal_quadruple,
    generic_diametrical_criterion,
    is_pseudolinear,
    is_symmetric_labeling,
    label_multiplicity_condition,
    quadruples_from_cycle,
)
from .weights import (
    WeightMatrix,
    distance,
    generic_weights,
    kendall_tau_weights,
    normalized_kendall,
    zero_distance_witness,
)

EXHAUSTIVE_POINTS = 24
SAMPLES = 2000


@dataclass
class Check:
    name: str
    count: int = 0
    failures: int = 0
    counterexample: str | None = None

    def record(self, ok: bool, describe: Callable[[], str] | str = ""):
        self.count += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = describe() if callable(describe) else describe

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def line(self) -> str:
        if self.passed:
            return f"[PASS] {self.name}: {self.count} checked"
        return (
            f"[FAIL] {self.name}: {self.failures}/{self.count} failed; "
            f"first counterexample: {self.counterexample}"
        )


def random_rational(rng: random.Random, lo: int = 1, hi: int = 9) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 9))


def random_weights(rng: random.Random, n: int, strict: bool = True) -> WeightMatrix:
    """Random rational weights; with ``strict=False`` at least one weight is 0."""
    m = pair_count(n)
    ws = [random_rational(rng) for _ in range(m)]
    if not strict:
        zeros = rng.sample(range(m), rng.randint(1, m - 1) if m > 1 else 0)
        for k in zeros:
            ws[k] = Fraction(0)
    return WeightMatrix(n, tuple(ws))


def random_permutation(rng: random.Random, n: int) -> Permutation:
    vals = list(range(1, n + 1))
    rng.shuffle(vals)
    return Permutation(tuple(vals))


def _pairs(rng, n, exhaustive_limit=EXHAUSTIVE_POINTS, samples=SAMPLES):
    if math.factorial(n) <= exhaustive_limit:
        pts = all_permutations(n)
        return [(p, q) for p in pts for q in pts]
    return [(random_permutation(rng, n), random_permutation(rng, n)) for _ in range(samples)]


def _triples(rng, n, samples=SAMPLES):
    if math.factorial(n) <= EXHAUSTIVE_POINTS:
        pts = all_permutations(n)
        return list(permutations(pts, 3))
    out = []
    while len(out) < samples:
        t = tuple(random_permutation(rng, n) for _ in range(3))
        if len(set(t)) == 3:
            out.append(t)
    return out


def core_suite(n: int, seed: int = 0, n_weights: int = 10) -> list[Check]:
    if n < 2:
        return [Check("distance suites need n >= 2", 1, 1, f"n={n}")]
    rng = random.Random(seed)
    strict = [random_weights(rng, n) for _ in range(n_weights)]
    loose = [random_weights(rng, n, strict=False) for _ in range(n_weights)] if n >= 3 else []

    axioms = Check("pseudometric axioms (symmetry, d(p,p)=0, triangle)")
    indisc = Check("identity of indiscernibles for strict W")
    witness = Check("zero-distance witness for W with a zero weight")
    scaling = Check("scaling invariance d_aW = d_W")
    subadd = Check("subadditivity d_(W+V) <= d_W + d_V")
    reflect = Check("reflection d(p, q^) = 1 - d(p, q)")
    inverse = Check("inverse pair d(p, q) = d(p^, q^)")
    bound = Check("bound d <= 1, and d = 1 iff q = p^ for strict W")
    tri01 = Check("pairwise triangle defect in {0, 2}")
    kcount = Check("normalized Kendall times C(n,2) = |dsc|")

    for W in strict + loose:
        for p, q, r in _triples(rng, n, samples=SAMPLES // 4):
            dpq, dqr, dpr = distance(W, p, q), distance(W, q, r), distance(W, p, r)
            axioms.record(
                dpq == distance(W, q, p) and distance(W, p, p) == 0 and dpr <= dpq + dqr,
                lambda: f"W={W.weights} p={p} q={q} r={r}",
            )
    for W in strict:
        for p, q in _pairs(rng, n):
            if p != q:
                indisc.record(distance(W, p, q) > 0, lambda: f"W={W.weights} p={p} q={q}")
    for W in loose:
        wit = zero_distance_witness(W)
        witness.record(
            wit is not None and wit[0] != wit[1] and distance(W, *wit) == 0,
            lambda: f"W={W.weights} witness={wit}",
        )
    for W in strict:
        witness.record(zero_distance_witness(W) is None, lambda: f"strict W={W.weights} has witness")

    for k, W in enumerate(strict):
        V = strict[(k + 1) % len(strict)]
        a = random_rational(rng)
        aW, WV = a * W, W + V
        for p, q in _pairs(rng, n, samples=SAMPLES // 2):
            d = distance(W, p, q)
            qh = ordinal_inverse(q)
            scaling.record(distance(aW, p, q) == d, lambda: f"a={a} p={p} q={q}")
            subadd.record(distance(WV, p, q) <= d + distance(V, p, q), lambda: f"p={p} q={q}")
            reflect.record(distance(W, p, qh) == 1 - d, lambda: f"p={p} q={q}")
            inverse.record(distance(W, ordinal_inverse(p), qh) == d, lambda: f"p={p} q={q}")
            bound.record(d <= 1 and ((d == 1) == (q == ordinal_inverse(p))), lambda: f"p={p} q={q}")

    prs = index_pairs(n)
    for p, q, r in _triples(rng, n, samples=SAMPLES // 4):
        for pr in prs:
            v = discordance_indicator(p, q, pr) + discordance_indicator(q, r, pr) - discordance_indicator(p, r, pr)
            tri01.record(v in (0, 2), lambda: f"p={p} q={q} r={r} pair={pr}")
    for p, q in _pairs(rng, n):
        kcount.record(normalized_kendall(p, q) * pair_count(n) == len(discordance_set(p, q)), lambda: f"p={p} q={q}")

    return [axioms, indisc, witness, scaling, subadd, reflect, inverse, bound, tri01, kcount]


def graph_suite(n: int, seed: int = 0, n_weights: int = 10, cap: int | None = None) -> list[Check]:
    rng = random.Random(seed)
    g = build_graph(n, cap=cap)
    counts = Check("vertex/edge counts and degrees")
    edges = list(g.edges())
    counts.record(
        len(g) == math.factorial(n)
        and len(edges) == math.factorial(n) * (n - 1) // 2
        and all(len(g.adjacency(v)) == n - 1 for v in range(len(g))),
        lambda: f"|V|={len(g)} |E|={len(edges)}",
    )

    transitive = Check("vertex transitivity under right composition")
    for _ in range(5):
        t = random_permutation(rng, n)
        transitive.record(is_vertex_transitive_check(g, t), lambda: f"t={t}")

    if len(g) <= 120:
        sources = np.arange(len(g))
    else:
        sources = np.array(sorted(rng.sample(range(len(g)), 20)))
    dist = g.bfs(sources)
    prop2 = Check("graph distance = |dsc| (BFS)")
    for row, s in enumerate(sources):
        p = g.vertices[s]
        for v, q in enumerate(g.vertices):
            prop2.record(int(dist[row, v]) == graph_distance(p, q), lambda: f"p={p} q={q}")

    prop3 = Check("betweenness: union <=> disjoint <=> on a shortest path")
    thm2 = Check("betweenness: discordance test <=> d_W additivity")
    weights = [random_weights(rng, n) for _ in range(n_weights)] if n >= 2 else []
    full = g.bfs() if len(g) <= 120 else None
    for p, m, q in (_triples(rng, n) if n >= 3 else []):
        ip, im, iq = g.index[p], g.index[m], g.index[q]
        if full is not None:
            on_path = full[ip, im] + full[im, iq] == full[ip, iq]
        else:
            on_path = graph_distance(p, m) + graph_distance(m, q) == graph_distance(p, q)
        u, d = union_condition(p, m, q), disjoint_condition(p, m, q)
        prop3.record(u == d == on_path, lambda: f"p={p} m={m} q={q}")
        dsc_verdict = lies_between_dsc(p, m, q)
        for W in weights:
            thm2.record(lies_between_metric(W, p, m, q) == dsc_verdict, lambda: f"W={W.weights} p={p} m={m} q={q}")

    paths = Check("enumerated shortest paths are geodesics labeled by dsc")
    for p, q in _pairs(rng, n, samples=50)[:200]:
        target = discordance_set(p, q)
        found = 0
        for path in shortest_paths(g, p, q):
            found += 1
            paths.record(
                is_shortest_path(path) and set(path.labels) == target.pairs and len(path) == len(target),
                lambda: f"p={p} q={q} path={[str(x) for x in path.vertices]}",
            )
            if found >= 500:
                break
        if found < 500:
            paths.record(found == count_shortest_paths(p, q), lambda: f"count mismatch p={p} q={q}")

    checks = [counts, transitive, prop2, prop3, thm2, paths]
    if n <= 4:
        even = Check("simple cycles (length <= 12) are even")
        for c in simple_cycles(g, 12):
            even.record(len(c) % 2 == 0, lambda: " | ".join(map(str, c.vertices)))
        checks.append(even)
    return checks


def quadruples_suite(n: int, seed: int = 0, n_weights: int = 10) -> list[Check]:
    rng = random.Random(seed)
    if n < 3:
        return [Check("pseudolinear quadruples need n >= 3")]
    weights = [random_weights(rng, n) for _ in range(n_weights)]

    prop4 = Check("antipodal quadruples are pseudolinear with diameter 1")
    for W in weights:
        for _ in range(SAMPLES // n_weights):
            p, q = random_permutation(rng, n), random_permutation(rng, n)
            if q == p or q == ordinal_inverse(p):
                continue
            try:
                cert = antipodal_quadruple(W, p, q)
                ok = cert.diameter == 1 and is_pseudolinear(W, cert.enumeration) is not None
            except PermRankError:
                ok = False
            prop4.record(ok, lambda: f"W={W.weights} p={p} q={q}")

    checks = [prop4]
    if n <= 4:
        prop5 = Check("symmetric cycles with 2(2k-1) multiplicities give quadruples")
        g = build_graph(n)
        for c in simple_cycles(g, 12):
            if not is_symmetric_labeling(c):
                continue
            if not all(ok for _, ok in label_multiplicity_condition(c).values()):
                continue
            for W in weights[:3] + [kendall_tau_weights(n)]:
                try:
                    ok = all(is_pseudolinear(W, cert.enumeration) for cert in quadruples_from_cycle(W, c))
                except PermRankError:
                    ok = False
                prop5.record(ok, lambda: " | ".join(map(str, c.vertices)))
        checks.append(prop5)

    if pair_count(n) <= 24:
        G = generic_weights(n)
        prop6 = Check("generic weights: metric criterion <=> discordance criterion")
        for k in range(SAMPLES):
            p = random_permutation(rng, n)
            if k % 2:
                q = random_permutation(rng, n)
                pts = (p, q, ordinal_inverse(p), ordinal_inverse(q))
            else:
                pts = tuple(random_permutation(rng, n) for _ in range(3))
                pts = (p,) + pts
            if len(set(pts)) != 4:
                continue
            lhs, rhs = generic_diametrical_criterion(G, pts)
            prop6.record(lhs == rhs, lambda: " | ".join(map(str, pts)))
        checks.append(prop6)
    return checks


def conjecture_suite(n: int, seed: int = 0, n_weights: int = 10) -> list[Check]:
    rng = random.Random(seed)
    if n > 4:
        return [Check(f"conjecture conditions are only checked for n <= 4 (got {n})", 1, 1, "n too large")]
    weights = [kendall_tau_weights(n)] if n >= 4 else [random_weights(rng, n) for _ in range(n_weights)]
    conds = Check("embedded S_n satisfies conditions (i)-(iv)")
    trip = Check("isometry search round-trips S_3 tables")
    for W in weights:
        t = embed_sn(W)
        rep = check_conditions(t, n)
        conds.record(rep.overall, lambda: f"W={W.weights}: " + "; ".join(rep.failures))
        if n == 3:
            try:
                res = isometry_search_n3(t)
                ok = all(
                    t.d(a, b) == res.scale * distance(res.weights, res.mapping[t.labels[a]], res.mapping[t.labels[b]])
                    for a, b in combinations(range(6), 2)
                )
            except PermRankError:
                ok = False
            trip.record(ok, lambda: f"W={W.weights}")
    return [conds, trip] if n == 3 else [conds]


SUITES = {
    "core": core_suite,
    "graph": graph_suite,
    "quadruples": quadruples_suite,
    "conjecture": conjecture_suite,
}


def run_suite(name: str, n: int, seed: int = 0) -> list[Check]:
    return SUITES[name](n, seed=seed)
