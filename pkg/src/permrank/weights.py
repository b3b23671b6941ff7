"""
Weight matrices and the weighted Kendall distance.

All arithmetic is exact: weights are :class:`fractions.Fraction` and every
distance is a ``Fraction`` in [0, 1]. Internally each matrix keeps an
integer-scaled copy of its weights (scaled by the lcm of the denominators),
which is legal because the distance is invariant under positive scaling;
one ``Fraction`` is built per distance instead of one per pair.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .errors import (
    DuplicatePair,
    NegativeWeight,
    NonpositiveFactor,
    NotGenericWeights,
    OrderMismatch,
    PairOutOfRange,
    ParseError,
    PseudometricWarning,
    ZeroTotal,
)
from .perm import (
    IndexPair,
    Permutation,
    discordance_set,
    index_pairs,
    pair_count,
)

Rational = Fraction


def as_rational(value) -> Fraction:
    """Exact conversion; strings such as ``"0.25"`` or ``"3/7"`` are parsed exactly."""
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class WeightMatrix:
    """Strictly upper triangular nonnegative weights, stored densely in
    lexicographic pair order (``weights[k]`` belongs to ``index_pairs(n)[k]``).
    """

    n: int
    weights: tuple
    total: Fraction = field(init=False, compare=False)
    is_strict: bool = field(init=False, compare=False)
    _scaled: tuple = field(init=False, repr=False, compare=False)
    _scaled_total: int = field(init=False, repr=False, compare=False)
    _terms: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ws = tuple(as_rational(w) for w in self.weights)
        if len(ws) != pair_count(self.n):
            raise PairOutOfRange(f"order {self.n} needs {pair_count(self.n)} weights, got {len(ws)}")
        for pr, w in zip(index_pairs(self.n), ws):
            if w < 0:
                raise NegativeWeight(f"weight {w} at {pr} is negative")
        total = sum(ws, Fraction(0))
        if total == 0:
            raise ZeroTotal("the weights must not all be zero")
        scale = math.lcm(*(w.denominator for w in ws))
        scaled = tuple(int(w * scale) for w in ws)
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "total", total)
        object.__setattr__(self, "is_strict", all(w > 0 for w in ws))
        object.__setattr__(self, "_scaled", scaled)
        object.__setattr__(self, "_scaled_total", sum(scaled))
        terms = tuple(
            (pr.i - 1, pr.j - 1, s) for pr, s in zip(index_pairs(self.n), scaled) if s
        )
        object.__setattr__(self, "_terms", terms)

    def __getitem__(self, pair: IndexPair) -> Fraction:
        pair.check(self.n)
        return self.weights[_rank(pair, self.n)]

    def items(self):
        return zip(index_pairs(self.n), self.weights)

    def scaled(self) -> tuple[tuple[int, ...], int]:
        """Integer weights proportional to this matrix, and their sum."""
        return self._scaled, self._scaled_total

    def __add__(self, other: WeightMatrix) -> WeightMatrix:
        if not isinstance(other, WeightMatrix):
            return NotImplemented
        if other.n != self.n:
            raise OrderMismatch(f"cannot add weight matrices of orders {self.n} and {other.n}")
        return WeightMatrix(self.n, tuple(a + b for a, b in zip(self.weights, other.weights)))

    def __rmul__(self, a) -> WeightMatrix:
        a = as_rational(a)
        if a <= 0:
            raise NonpositiveFactor(f"scale factor {a} must be positive")
        return WeightMatrix(self.n, tuple(a * w for w in self.weights))

    def zero_pairs(self) -> list[IndexPair]:
        return [pr for pr, w in self.items() if w == 0]

    def __str__(self):
        return format_weights(self)


def _rank(pair: IndexPair, n: int) -> int:
    return (pair.i - 1) * n - (pair.i - 1) * pair.i // 2 + (pair.j - pair.i - 1)


def make_weight_matrix(n: int, entries: Iterable[tuple[IndexPair | tuple[int, int], object]]) -> WeightMatrix:
    """Build a matrix from sparse ``(pair, weight)`` entries; absent pairs get weight 0.

    A :class:`PseudometricWarning` is emitted when some pair ends up with
    weight 0.
    """
    if n < 2:
        raise PairOutOfRange(f"weight matrices need order >= 2, got {n}")
    dense = [Fraction(0)] * pair_count(n)
    seen = set()
    for pair, w in entries:
        if not isinstance(pair, IndexPair):
            pair = IndexPair(*pair)
        pair.check(n)
        if pair in seen:
            raise DuplicatePair(f"weight for {pair} given twice")
        seen.add(pair)
        dense[_rank(pair, n)] = as_rational(w)
    W = WeightMatrix(n, tuple(dense))
    if not W.is_strict:
        warnings.warn(
            f"weights vanish at {', '.join(map(str, W.zero_pairs()))}; distance is only a pseudometric",
            PseudometricWarning,
            stacklevel=2,
        )
    return W


def kendall_tau_weights(n: int) -> WeightMatrix:
    return WeightMatrix(n, (Fraction(1),) * pair_count(n))


def product_weights(factors: Iterable) -> WeightMatrix:
    """w_ij = w_i * w_j for positive per-position factors."""
    fs = [as_rational(f) for f in factors]
    for k, f in enumerate(fs, start=1):
        if f <= 0:
            raise NonpositiveFactor(f"factor {f} at position {k} must be positive")
    n = len(fs)
    return WeightMatrix(n, tuple(fs[a] * fs[b] for a, b in combinations(range(n), 2)))


def generic_weights(n: int) -> WeightMatrix:
    """Distinct powers of two in lexicographic pair order: 1, 2, 4, ..."""
    return WeightMatrix(n, tuple(Fraction(2**k) for k in range(pair_count(n))))


def _check(W: WeightMatrix, p: Permutation, q: Permutation):
    if not (W.n == p.n == q.n):
        raise OrderMismatch(f"weight order {W.n}, permutation orders {p.n} and {q.n}")


def discordant_weight(W: WeightMatrix, p: Permutation, q: Permutation) -> Fraction:
    """Unnormalized numerator: total weight of the discordant pairs."""
    _check(W, p, q)
    return sum((W.weights[_rank(pr, W.n)] for pr in discordance_set(p, q)), Fraction(0))


def distance(W: WeightMatrix, p: Permutation, q: Permutation) -> Fraction:
    _check(W, p, q)
    pv, qv = p.values, q.values
    num = 0
    for a, b, w in W._terms:
        if (pv[b] - pv[a]) * (qv[b] - qv[a]) < 0:
            num += w
    return Fraction(num, W._scaled_total)


def normalized_kendall(p: Permutation, q: Permutation) -> Fraction:
    if p.n != q.n:
        raise OrderMismatch(f"permutations of orders {p.n} and {q.n}")
    return Fraction(len(discordance_set(p, q)), pair_count(p.n))


def kendall_correlation(p: Permutation, q: Permutation) -> Fraction:
    return 1 - 2 * normalized_kendall(p, q)


def is_metric(W: WeightMatrix) -> bool:
    return W.is_strict


def zero_distance_witness(W: WeightMatrix) -> tuple[Permutation, Permutation] | None:
    """Two distinct permutations at distance 0, or None when ``W`` is strict.

    Uses the first zero-weight pair (i, j): values 1 and 2 are placed at
    positions i and j and the rest ascend, so swapping positions i and j
    flips only that pair.
    """
    zeros = W.zero_pairs()
    if not zeros:
        return None
    pr = zeros[0]
    rest = iter(range(3, W.n + 1))
    vals = [1 if k == pr.i else 2 if k == pr.j else next(rest) for k in range(1, W.n + 1)]
    p = Permutation(tuple(vals))
    vals[pr.i - 1], vals[pr.j - 1] = vals[pr.j - 1], vals[pr.i - 1]
    return p, Permutation(tuple(vals))


_SUBSET_SUM_LIMIT = 24


@lru_cache(maxsize=256)
def has_distinct_subset_sums(W: WeightMatrix) -> bool:
    """Whether any two different sets of pairs carry different total weight.

    Superincreasing weight sequences pass immediately; otherwise subset sums
    are enumerated, which is only attempted for at most 24 pairs.
    """
    ws = sorted(W.weights)
    if ws[0] <= 0:
        return False
    running = Fraction(0)
    for w in ws:
        if w <= running:
            break
        running += w
    else:
        return True
    if len(ws) > _SUBSET_SUM_LIMIT:
        raise ValueError(f"subset-sum check over {len(ws)} weights is too expensive")
    sums = {0}
    for w in W._scaled:
        shifted = {s + w for s in sums}
        if not shifted.isdisjoint(sums):
            return False
        sums |= shifted
    return True


def require_generic(W: WeightMatrix):
    if not has_distinct_subset_sums(W):
        raise NotGenericWeights("two different sets of pairs have equal total weight")


def format_weights(W: WeightMatrix) -> str:
    """Serialize in the weight-file format (``n <order>`` then ``i j w`` lines)."""
    lines = [f"n {W.n}"]
    lines += [f"{pr.i} {pr.j} {w}" for pr, w in W.items() if w != 0]
    return "\n".join(lines) + "\n"


def parse_weights(text: str) -> WeightMatrix:
    """Parse the weight-file format. Blank lines and ``#`` comments are ignored."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty weight file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "n":
        raise ParseError(f"expected header 'n <order>', got {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise ParseError(f"bad order in header {lines[0]!r}") from None
    entries = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ParseError(f"expected 'i j w', got {ln!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
            w = Fraction(parts[2])
        except ValueError:
            raise ParseError(f"cannot parse weight line {ln!r}") from None
        if not i < j:
            raise PairOutOfRange(f"weight line {ln!r} needs i < j")
        entries.append(((i, j), w))
    return make_weight_matrix(n, entries)


__all__ = [
    "Rational",
    "WeightMatrix",
    "as_rational",
    "make_weight_matrix",
    "kendall_tau_weights",
    "product_weights",
    "generic_weights",
    "distance",
    "discordant_weight",
    "normalized_kendall",
    "kendall_correlation",
    "is_metric",
    "zero_distance_witness",
    "has_distinct_subset_sums",
    "require_generic",
    "format_weights",
    "parse_weights",
]
