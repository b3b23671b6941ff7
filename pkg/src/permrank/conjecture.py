"""
Finite metric tables and the four structural conditions satisfied by
(S_n, d_W): size n!, unique antipodes, pseudolinear antipodal quadruples,
and additive antipodal chains of exactly C(n, 2) steps.

For n = 3 the conditions are also sufficient, and :func:`isometry_search_n3`
reconstructs a weight matrix and an isometry onto S_3.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from .errors import MetricAxiomViolation, NoCaseApplies, NotAMetric, OrderTooLarge, ParseError
from .perm import Permutation, all_permutations, ordinal_inverse
from .quadruples import pseudolinear_enumeration
from .weights import WeightMatrix, as_rational, distance

EMBED_CAP = 5
TABLE_CAP = 24


@dataclass(frozen=True)
class MetricTable:
    labels: tuple
    dist: tuple  # tuple of row tuples of Fraction

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def diameter(self) -> Fraction:
        return max((max(row) for row in self.dist), default=Fraction(0))

    def d(self, a: int, b: int) -> Fraction:
        return self.dist[a][b]

    def format(self) -> str:
        """Serialize in the metric-table file format."""
        lines = [f"points {self.size}", " ".join(self.labels)]
        lines += [" ".join(str(x) for x in row) for row in self.dist]
        return "\n".join(lines) + "\n"


def make_metric_table(labels: Sequence[str], dist: Sequence[Sequence]) -> MetricTable:
    labels = tuple(str(x) for x in labels)
    m = len(labels)
    if len(set(labels)) != m:
        raise ParseError("point labels must be unique")
    if len(dist) != m or any(len(row) != m for row in dist):
        raise ParseError(f"distance matrix must be {m} x {m}")
    D = tuple(tuple(as_rational(x) for x in row) for row in dist)
    for a in range(m):
        if D[a][a] != 0:
            raise MetricAxiomViolation("zero diagonal", (labels[a],))
        for b in range(a + 1, m):
            if D[a][b] != D[b][a]:
                raise MetricAxiomViolation("symmetry", (labels[a], labels[b]))
            if D[a][b] <= 0:
                raise MetricAxiomViolation("positivity", (labels[a], labels[b]))
    for a in range(m):
        for b in range(m):
            for c in range(m):
                if D[a][c] > D[a][b] + D[b][c]:
                    raise MetricAxiomViolation("triangle inequality", (labels[a], labels[b], labels[c]))
    return MetricTable(labels, D)


def parse_metric_table(text: str) -> MetricTable:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty metric table")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "points":
        raise ParseError(f"expected header 'points <m>', got {lines[0]!r}")
    m = int(head[1])
    if len(lines) != m + 2:
        raise ParseError(f"expected a label line and {m} rows after the header")
    labels = lines[1].split()
    try:
        rows = [[Fraction(x) for x in ln.split()] for ln in lines[2:]]
    except ValueError as exc:
        raise ParseError(f"bad rational entry: {exc}") from None
    return make_metric_table(labels, rows)


def embed_sn(W: WeightMatrix, cap: int = EMBED_CAP) -> MetricTable:
    """The full distance table of (S_n, d_W), points in lexicographic order."""
    if not W.is_strict:
        raise NotAMetric("the embedding needs strictly positive weights")
    if W.n > cap:
        raise OrderTooLarge(f"S_{W.n} has {math.factorial(W.n)} points; cap is n <= {cap}")
    pts = all_permutations(W.n)
    D = [[distance(W, p, q) for q in pts] for p in pts]
    return MetricTable(tuple(str(p).replace(" ", "") if W.n < 10 else str(p) for p in pts),
                       tuple(tuple(r) for r in D))


@dataclass
class ConditionReport:
    size_ok: bool
    antipode_map: dict | None
    quadruple_ok: bool
    chain_ok: bool
    witness_chains: dict = field(default_factory=dict)
    chain_length: int = 0
    longer_chain: tuple | None = None
    failures: list = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return self.size_ok and self.antipode_map is not None and self.quadruple_ok and self.chain_ok

    def format(self, labels: Sequence[str] | None = None) -> str:
        def name(k):
            return labels[k] if labels is not None else str(k)

        out = [
            f"(i) size: {'ok' if self.size_ok else 'FAIL'}",
            f"(ii) unique antipodes: {'ok' if self.antipode_map is not None else 'FAIL'}",
            f"(iii) antipodal quadruples: {'ok' if self.quadruple_ok else 'FAIL'}",
            f"(iv) additive chains of {self.chain_length} steps: {'ok' if self.chain_ok else 'FAIL'}",
        ]
        if self.antipode_map is not None:
            pairs = sorted({tuple(sorted((a, b))) for a, b in self.antipode_map.items()})
            out.append("antipodes: " + ", ".join(f"{name(a)}~{name(b)}" for a, b in pairs))
        if self.longer_chain is not None:
            out.append("longer chain: " + " ".join(name(k) for k in self.longer_chain))
        for (a, b), ch in sorted(self.witness_chains.items()):
            out.append(f"chain {name(a)},{name(b)}: " + " ".join(name(k) for k in ch))
        out.extend(self.failures)
        out.append(f"overall: {'PASS' if self.overall else 'FAIL'}")
        return "\n".join(out)


def antipodes(t: MetricTable) -> dict | None:
    """Index -> unique farthest-at-diameter index, if that is a fixed-point-free involution."""
    diam = t.diameter
    amap = {}
    for a in range(t.size):
        far = [b for b in range(t.size) if t.d(a, b) == diam]
        if len(far) != 1:
            return None
        amap[a] = far[0]
    if any(amap[amap[a]] != a or amap[a] == a for a in amap):
        return None
    return amap


def additive_chains(t: MetricTable, z: int, zbar: int, steps: int) -> list[tuple[int, ...]]:
    """All chains z = p_0, ..., p_steps = zbar with d(p_i, p_j) equal to the sum
    of consecutive distances for every i < j.

    In a metric space this holds iff the consecutive distances add up to
    d(z, zbar), so a prefix can only be extended by points m with
    prefix + d(last, m) + d(m, zbar) == d(z, zbar).
    """
    target = t.d(z, zbar)
    out = []
    chain = [z]

    def rec(acc):
        last = chain[-1]
        left = steps - (len(chain) - 1)
        if left == 1:
            if acc + t.d(last, zbar) == target:
                out.append(tuple(chain) + (zbar,))
            return
        for m in range(t.size):
            if m == zbar or m in chain:
                continue
            step = t.d(last, m)
            if acc + step + t.d(m, zbar) == target:
                chain.append(m)
                rec(acc + step)
                chain.pop()

    if steps >= 1:
        rec(Fraction(0))
    return out


def check_conditions(t: MetricTable, n: int, size_cap: int = TABLE_CAP) -> ConditionReport:
    if t.size > size_cap:
        raise OrderTooLarge(f"table with {t.size} points exceeds cap {size_cap}")
    k = math.comb(n, 2)
    size_ok = t.size == math.factorial(n)
    failures = []
    amap = antipodes(t)
    report = ConditionReport(size_ok, amap, False, False, chain_length=k, failures=failures)
    if not size_ok:
        failures.append(f"size {t.size} != {n}! = {math.factorial(n)}")
    if amap is None:
        failures.append("some point lacks a unique antipode")
        return report

    diam = t.diameter
    quad_ok = True
    for a, b in combinations(range(t.size), 2):
        if t.d(a, b) == diam:
            continue
        pts = {a, b, amap[a], amap[b]}
        if len(pts) != 4 or pseudolinear_enumeration(tuple(pts), t.d) is None:
            quad_ok = False
            failures.append(f"{{{t.labels[a]},{t.labels[b]}}} with antipodes is not pseudolinear")
            break
    report.quadruple_ok = quad_ok

    witness = {}
    longer = None
    for z in range(t.size):
        for ch in additive_chains(t, z, amap[z], k):
            members = sorted(ch)
            for a, b in combinations(members, 2):
                witness.setdefault((a, b), ch)
        if longer is None:
            more = additive_chains(t, z, amap[z], k + 1)
            if more:
                longer = more[0]
    missing = [pr for pr in combinations(range(t.size), 2) if pr not in witness]
    if missing:
        a, b = missing[0]
        failures.append(f"no additive {k}-step chain contains {t.labels[a]} and {t.labels[b]}")
    if longer is not None:
        failures.append(f"additive chain with {k + 1} steps exists")
    report.chain_ok = not missing and longer is None
    report.witness_chains = witness
    report.longer_chain = longer
    return report


# chain (z, p1, p2, zbar) -> images; weights w23 = d(z,p1), w13 = d(p1,p2), w12 = d(p2,zbar)
_CHAIN_IMAGE = {
    "z": (1, 2, 3),
    "p1": (1, 3, 2),
    "p2": (2, 3, 1),
    "zbar": (3, 2, 1),
    "p1bar": (3, 1, 2),
    "p2bar": (2, 1, 3),
}

# (name, second point, third point) in terms of x1..x6 (0-based x1 = 0)
_CASES = (
    ("a1", 5, 4),
    ("a2", 5, 1),
    ("a5", 4, 2),
    ("a6", 4, 5),
    ("a1'", 1, 2),
    ("a2'", 1, 5),
    ("a5'", 2, 1),
    ("a6'", 2, 4),
)


@dataclass(frozen=True)
class IsometryResult:
    weights: WeightMatrix
    mapping: dict  # point label -> Permutation
    case: str
    scale: Fraction  # table distance = scale * d_W

    def format(self) -> str:
        lines = [f"case: {self.case}", f"scale: {self.scale}", "weights:"]
        lines += ["  " + ln for ln in str(self.weights).splitlines()]
        lines.append("mapping:")
        lines += [f"  {lab} -> {p}" for lab, p in self.mapping.items()]
        return "\n".join(lines)


def label_six_points(t: MetricTable) -> list[int]:
    """Table indices of x1..x6: x1 is the first point, x2 the next point that is
    not x1's antipode, x3 the remaining one; x4, x5, x6 are the antipodes."""
    amap = antipodes(t)
    if amap is None or t.size != 6:
        raise NoCaseApplies("need six points with unique antipodes")
    x1 = 0
    rest = [k for k in range(6) if k not in (x1, amap[x1])]
    x2 = rest[0]
    x3 = next(k for k in rest if k not in (x2, amap[x2]))
    return [x1, x2, x3, amap[x1], amap[x2], amap[x3]]


def isometry_search_n3(t: MetricTable) -> IsometryResult:
    """Weights and an isometry (up to the scale ``diam``) onto (S_3, d_W).

    The antipodal pairs are labeled (x1,x4), (x2,x5), (x3,x6); the eight
    admissible chains x1, y, z, x4 are tried in a fixed order and the first
    additive one determines the weights. The map is verified on all 15 pairs.
    """
    xs = label_six_points(t)
    amap = antipodes(t)
    diam = t.diameter
    z, zbar = xs[0], xs[3]
    for name, second, third in _CASES:
        p1, p2 = xs[second], xs[third]
        if t.d(z, p1) + t.d(p1, p2) + t.d(p2, zbar) != diam:
            continue
        W = WeightMatrix(3, (t.d(p2, zbar), t.d(p1, p2), t.d(z, p1)))
        roles = {z: "z", p1: "p1", p2: "p2", zbar: "zbar", amap[p1]: "p1bar", amap[p2]: "p2bar"}
        phi = {k: Permutation(_CHAIN_IMAGE[role]) for k, role in roles.items()}
        if len(phi) != 6:
            continue
        if all(t.d(a, b) == diam * distance(W, phi[a], phi[b]) for a, b in combinations(range(6), 2)):
            mapping = {t.labels[k]: phi[k] for k in sorted(phi)}
            return IsometryResult(W, mapping, name, diam)
    raise NoCaseApplies("no admissible chain from x1 to its antipode is additive")


def admissible_cases() -> list[tuple[str, int, int]]:
    """The case table: (name, 0-based index of the second point, of the third)."""
    return list(_CASES)


def excluded_sequences() -> list[tuple[int, int]]:
    """Chains x1, y, z, x4 through a consecutive antipodal pair; never admissible."""
    out = []
    for second, third in permutations(range(1, 6), 2):
        if 3 in (second, third):
            continue
        if (second, third) in ((1, 4), (4, 1), (2, 5), (5, 2)):
            out.append((second, third))
    return out
