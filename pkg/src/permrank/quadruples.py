"""
Pseudolinear quadruples in (S_n, d_W).

Four points form a pseudolinear quadruple when they can be enumerated
x1, x2, x3, x4 so that the sides measure s, t, s, t and both diagonals
(x1x3 and x2x4) measure s + t, with s, t > 0.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Hashable, Sequence

from .errors import (
    DiametricalInput,
    NotAMetric,
    NotAdjacentValues,
    NotDistinct,
    NotOnCycle,
    OddCycle,
    OrderMismatch,
    PreconditionFailed,
)
from .graph import Cycle
from .perm import (
    IndexPair,
    Permutation,
    adjacent_labels,
    adjacent_moves,
    adjacent_transposition,
    discordance_set,
    ordinal_inverse,
)
from .weights import WeightMatrix, distance, require_generic

# diagonal pairings of sorted points (y0, y1, y2, y3), tried in this order
_PAIRINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


@dataclass(frozen=True)
class QuadrupleCertificate:
    enumeration: tuple
    s: Fraction
    t: Fraction

    @property
    def diameter(self) -> Fraction:
        return self.s + self.t

    @property
    def diagonals(self) -> tuple[tuple, tuple]:
        x1, x2, x3, x4 = self.enumeration
        return (x1, x3), (x2, x4)

    def format(self) -> str:
        pts = " | ".join(str(x) for x in self.enumeration)
        return (
            f"enumeration: {pts}\n"
            f"s = {_q(self.s)}\nt = {_q(self.t)}\ns+t = {_q(self.diameter)}"
        )


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def check_enumeration(x: Sequence, dist: Callable) -> tuple[Fraction, Fraction] | None:
    """(s, t) if the ordered 4-tuple satisfies the pseudolinear equalities, else None."""
    x1, x2, x3, x4 = x
    s = dist(x1, x2)
    t = dist(x2, x3)
    if s <= 0 or t <= 0:
        return None
    if dist(x3, x4) != s or dist(x4, x1) != t:
        return None
    if dist(x2, x4) != s + t or dist(x3, x1) != s + t:
        return None
    return s, t


def pseudolinear_enumeration(points: Sequence[Hashable], dist: Callable, key=None) -> tuple | None:
    """Search the three diagonal pairings of four points under ``dist``.

    Points are sorted (by ``key`` if given) and the pairings are tried as
    {01,23}, {02,13}, {03,12}. Returns ``(enumeration, s, t)`` for the first
    pairing that works, else None.
    """
    ys = sorted(points, key=key)
    for (a, b), (c, d) in _PAIRINGS:
        A, B, C, D = ys[a], ys[b], ys[c], ys[d]
        # diagonals A-B and C-D: enumeration (A, C, B, D)
        res = check_enumeration((A, C, B, D), dist)
        if res is not None:
            return (A, C, B, D), res[0], res[1]
    return None


def _validate_points(W: WeightMatrix, points):
    pts = tuple(points)
    if len(pts) != 4:
        raise ValueError(f"need exactly four points, got {len(pts)}")
    if not W.is_strict:
        raise NotAMetric("pseudolinear quadruples are defined for strictly positive weights")
    if any(p.n != W.n for p in pts):
        raise OrderMismatch(f"points must all have order {W.n}")
    if len(set(pts)) != 4:
        raise NotDistinct("the four points must be pairwise distinct")
    return pts


def certify(W: WeightMatrix, enumeration: Sequence[Permutation]) -> QuadrupleCertificate:
    """Certificate for a given enumeration; raises if the equalities fail."""
    pts = _validate_points(W, enumeration)
    res = check_enumeration(pts, lambda a, b: distance(W, a, b))
    if res is None:
        raise PreconditionFailed(f"({' | '.join(map(str, pts))}) is not a pseudolinear enumeration")
    return QuadrupleCertificate(pts, res[0], res[1])


def is_pseudolinear(W: WeightMatrix, points) -> QuadrupleCertificate | None:
    pts = _validate_points(W, points)
    found = pseudolinear_enumeration(pts, lambda a, b: distance(W, a, b))
    if found is None:
        return None
    return QuadrupleCertificate(*found)


def antipodal_quadruple(W: WeightMatrix, p: Permutation, q: Permutation) -> QuadrupleCertificate:
    """{p, q, p^, q^} with enumeration (p, q, p^, q^) and diameter 1."""
    if p == q:
        raise NotDistinct("p and q must differ")
    ph, qh = ordinal_inverse(p), ordinal_inverse(q)
    if q == ph:
        raise DiametricalInput(f"{q} is the ordinal inverse of {p}")
    return certify(W, (p, q, ph, qh))


def _even_half(c: Cycle) -> int:
    if len(c) % 2:
        raise OddCycle(f"cycle of odd length {len(c)}")
    return len(c) // 2


def is_symmetric_labeling(c: Cycle) -> bool:
    m = _even_half(c)
    return all(c.labels[k] == c.labels[k + m] for k in range(m))


def label_multiplicity_condition(c: Cycle) -> dict[IndexPair, tuple[int, bool]]:
    """Edge count per label and whether it equals 2(2k-1) for some k >= 1."""
    counts = Counter(c.labels)
    return {lab: (cnt, cnt % 4 == 2) for lab, cnt in sorted(counts.items())}


def opposite_vertex(c: Cycle, p: Permutation) -> Permutation:
    m = _even_half(c)
    try:
        k = c.vertices.index(p)
    except ValueError:
        raise NotOnCycle(f"{p} is not a vertex of the cycle") from None
    return c.vertices[(k + m) % len(c)]


def quadruples_from_cycle(W: WeightMatrix, c: Cycle) -> list[QuadrupleCertificate]:
    """Certificates (p, q, opp(p), opp(q)) for every non-opposite pair of cycle vertices."""
    if not W.is_strict:
        raise NotAMetric("pseudolinear quadruples are defined for strictly positive weights")
    m = _even_half(c)
    if not is_symmetric_labeling(c):
        raise PreconditionFailed("cycle labeling is not symmetric")
    bad = {str(lab): cnt for lab, (cnt, ok) in label_multiplicity_condition(c).items() if not ok}
    if bad:
        raise PreconditionFailed(f"label multiplicities not of the form 2(2k-1): {bad}")
    L = len(c)
    out = []
    for a, b in combinations(range(L), 2):
        if b - a == m:
            continue
        p, q = c.vertices[a], c.vertices[b]
        out.append(certify(W, (p, q, c.vertices[(a + m) % L], c.vertices[(b + m) % L])))
    return out


def generic_diametrical_criterion(W: WeightMatrix, points: Sequence[Permutation]) -> tuple[bool, bool]:
    """Compare the metric and the combinatorial side for the ordered tuple (p, q, p', q').

    lhs: (p, q, p', q') is a pseudolinear enumeration, so d(p, p') = d(q, q')
    is the diameter. rhs: dsc(p, q) = dsc(p', q'), dsc(q, p') = dsc(q', p)
    and dsc(p, q), dsc(q, p') are disjoint. Weights must have pairwise
    distinct subset sums.
    """
    pts = _validate_points(W, points)
    require_generic(W)
    p, q, pb, qb = pts
    lhs = check_enumeration(pts, lambda a, b: distance(W, a, b)) is not None
    d_pq = discordance_set(p, q)
    d_qpb = discordance_set(q, pb)
    rhs = (
        d_pq == discordance_set(pb, qb)
        and d_qpb == discordance_set(qb, p)
        and d_pq.isdisjoint(d_qpb)
    )
    return lhs, rhs


def symmetric_cycles_with_opposites(a: Permutation, b: Permutation, max_length: int) -> list[Cycle]:
    """Symmetrically labeled simple cycles of length <= ``max_length`` in which
    ``a`` and ``b`` are opposite vertices.

    A symmetric cycle is fixed by its first half: a path a -> b of length m,
    followed by the same label sequence replayed from b. Half-paths are
    enumerated up to ``max_length // 2`` edges.
    """
    found = []
    for m in range(1, max_length // 2 + 1):
        for half in _simple_paths(a, b, m):
            verts, labels = half
            cur = b
            second = []
            ok = True
            for lab in labels:
                try:
                    cur = adjacent_transposition(cur, lab)
                except NotAdjacentValues:
                    ok = False
                    break
                second.append(cur)
            if not ok or second[-1] != a:
                continue
            cycle_verts = list(verts) + second[:-1]
            if len(set(cycle_verts)) != len(cycle_verts) or len(cycle_verts) < 3:
                continue
            found.append(Cycle.through(cycle_verts))
    return found


def _simple_paths(a: Permutation, b: Permutation, length: int):
    path = [a]
    labels = []
    seen = {a}

    def rec():
        cur = path[-1]
        left = length - len(labels)
        if left == 0:
            if cur == b:
                yield tuple(path), tuple(labels)
            return
        if len(discordance_set(cur, b)) > left:
            return
        for lab, nxt in adjacent_moves(cur):
            if nxt in seen:
                continue
            path.append(nxt)
            labels.append(lab)
            seen.add(nxt)
            yield from rec()
            path.pop()
            labels.pop()
            seen.discard(nxt)

    yield from rec()


def adjacent_label_obstruction(a: Permutation, c: Permutation) -> list[tuple[Permutation, Permutation, frozenset]]:
    """Trace the forced first steps of two equally labeled walks from ``a`` and ``c``.

    While the two vertices share exactly one incident label, both walks must
    take it. Returns the sequence of (vertex from a, vertex from c, common
    labels) until the shared label set is not a singleton or a walk would
    step back onto its previous vertex.
    """
    trace = []
    prev = None
    x, y = a, c
    while True:
        common = (adjacent_labels(x) & adjacent_labels(y)).pairs
        trace.append((x, y, common))
        if len(common) != 1:
            return trace
        (lab,) = common
        nx, ny = adjacent_transposition(x, lab), adjacent_transposition(y, lab)
        if prev is not None and nx == prev:
            return trace
        prev = x
        x, y = nx, ny
