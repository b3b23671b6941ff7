"""
Permutations of {1, ..., n} in one-line (value sequence) notation.

Positions and values are 1-indexed in every public function, so
``Permutation((4, 1, 2, 3)).at(1) == 4``. Index pairs are always normalized
to ``i < j``.

>>> p = make_permutation([4, 1, 2, 3])
>>> sorted(inversion_set(p))
[IndexPair(i=1, j=2), IndexPair(i=1, j=3), IndexPair(i=1, j=4)]
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import NotABijection, NotAdjacentValues, OrderMismatch, PairOutOfRange


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {1..n}; ordering is lexicographic on the value sequence."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        n = len(vals)
        if n == 0:
            raise NotABijection("a permutation needs at least one value")
        if sorted(vals) != list(range(1, n + 1)):
            raise NotABijection(f"{vals} is not a bijection of 1..{n}")

    @property
    def n(self) -> int:
        return len(self.values)

    def at(self, position: int) -> int:
        return self.values[position - 1]

    def position_of(self, value: int) -> int:
        return self.values.index(value) + 1

    def compose(self, other: Permutation) -> Permutation:
        """Right composition ``self ∘ other``: position k maps to ``self[other[k]]``."""
        _check_orders(self, other)
        return Permutation(tuple(self.values[v - 1] for v in other.values))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __str__(self):
        return " ".join(map(str, self.values))


@dataclass(frozen=True, order=True)
class IndexPair:
    i: int
    j: int

    def __post_init__(self):
        if not 1 <= self.i < self.j:
            raise PairOutOfRange(f"index pair ({self.i},{self.j}) must satisfy 1 <= i < j")

    @classmethod
    def of(cls, a: int, b: int) -> IndexPair:
        """Normalize an unordered pair of positions; ``a == b`` is rejected."""
        if a == b:
            raise PairOutOfRange(f"index pair needs two different positions, got ({a},{b})")
        return cls(min(a, b), max(a, b))

    def check(self, n: int) -> IndexPair:
        if self.j > n:
            raise PairOutOfRange(f"index pair {self} out of range for order {n}")
        return self

    def __str__(self):
        return f"({self.i},{self.j})"


@dataclass(frozen=True)
class PairSet:
    """A set of index pairs over the ambient order ``n``.

    Iteration is in lexicographic pair order. Set operators return new
    ``PairSet`` objects and require equal orders.
    """

    n: int
    pairs: frozenset

    def __post_init__(self):
        pairs = frozenset(self.pairs)
        for pr in pairs:
            pr.check(self.n)
        object.__setattr__(self, "pairs", pairs)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self) -> Iterator[IndexPair]:
        return iter(sorted(self.pairs))

    def __contains__(self, pair):
        return pair in self.pairs

    def __eq__(self, other):
        if isinstance(other, PairSet):
            return self.n == other.n and self.pairs == other.pairs
        if isinstance(other, (set, frozenset)):
            return self.pairs == other
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.pairs))

    def _combine(self, other: PairSet, op) -> PairSet:
        if self.n != other.n:
            raise OrderMismatch(f"pair sets of orders {self.n} and {other.n}")
        return PairSet(self.n, op(self.pairs, other.pairs))

    def __and__(self, other):
        return self._combine(other, frozenset.__and__)

    def __or__(self, other):
        return self._combine(other, frozenset.__or__)

    def __sub__(self, other):
        return self._combine(other, frozenset.__sub__)

    def __xor__(self, other):
        return self._combine(other, frozenset.__xor__)

    def isdisjoint(self, other: PairSet) -> bool:
        return not (self & other).pairs

    @property
    def mask(self) -> int:
        """Bitmask with bit ``pair_rank(pair, n)`` set for every member."""
        return sum(1 << pair_rank(pr, self.n) for pr in self.pairs)

    def __str__(self):
        return "{" + ",".join(str(pr) for pr in self) + "}"


def make_permutation(values: Iterable[int]) -> Permutation:
    return Permutation(tuple(values))


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def all_permutations(n: int) -> list[Permutation]:
    """All of S_n in lexicographic order."""
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


def index_pairs(n: int) -> list[IndexPair]:
    """All (i, j), 1 <= i < j <= n, lexicographically."""
    return [IndexPair(i, j) for i, j in itertools.combinations(range(1, n + 1), 2)]


def pair_rank(pair: IndexPair, n: int) -> int:
    """0-based lexicographic rank of ``pair`` among ``index_pairs(n)``."""
    i, j = pair.i, pair.j
    return (i - 1) * n - (i - 1) * i // 2 + (j - i - 1)


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def _check_orders(p: Permutation, q: Permutation):
    if p.n != q.n:
        raise OrderMismatch(f"permutations of orders {p.n} and {q.n}")


def ordinal_inverse(p: Permutation) -> Permutation:
    """(n+1-p_1, ..., n+1-p_n)."""
    m = p.n + 1
    return Permutation(tuple(m - v for v in p.values))


def discordance_indicator(p: Permutation, q: Permutation, pair: IndexPair) -> int:
    _check_orders(p, q)
    pair.check(p.n)
    a, b = pair.i - 1, pair.j - 1
    return int((p.values[b] - p.values[a]) * (q.values[b] - q.values[a]) < 0)


def discordant_pairs(p: Sequence[int], q: Sequence[int]) -> Iterator[tuple[int, int]]:
    """Yield 0-based (a, b), a < b, where the value sequences disagree in order."""
    n = len(p)
    for a in range(n - 1):
        pa, qa = p[a], q[a]
        for b in range(a + 1, n):
            if (p[b] - pa) * (q[b] - qa) < 0:
                yield a, b


def discordance_set(p: Permutation, q: Permutation) -> PairSet:
    _check_orders(p, q)
    return PairSet(p.n, frozenset(IndexPair(a + 1, b + 1) for a, b in discordant_pairs(p.values, q.values)))


def inversion_set(p: Permutation) -> PairSet:
    return discordance_set(p, identity(p.n))


def adjacent_transposition(p: Permutation, pair: IndexPair) -> Permutation:
    """Swap positions ``pair.i`` and ``pair.j``; their values must be consecutive."""
    pair.check(p.n)
    a, b = pair.i - 1, pair.j - 1
    vals = list(p.values)
    if abs(vals[a] - vals[b]) != 1:
        raise NotAdjacentValues(
            f"positions {pair} of {p} hold {vals[a]} and {vals[b]}, which are not consecutive"
        )
    vals[a], vals[b] = vals[b], vals[a]
    return Permutation(tuple(vals))


def adjacent_moves(p: Permutation) -> list[tuple[IndexPair, Permutation]]:
    """All (label, neighbor) pairs of ``p`` in the permutohedron, sorted by label."""
    pos = [0] * (p.n + 1)
    for k, v in enumerate(p.values, start=1):
        pos[v] = k
    moves = []
    for v in range(1, p.n):
        pair = IndexPair.of(pos[v], pos[v + 1])
        vals = list(p.values)
        vals[pos[v] - 1], vals[pos[v + 1] - 1] = v + 1, v
        moves.append((pair, Permutation(tuple(vals))))
    moves.sort(key=lambda m: m[0])
    return moves


def adjacent_labels(p: Permutation) -> PairSet:
    """Labels of all permutohedron edges incident to ``p``."""
    return PairSet(p.n, frozenset(pr for pr, _ in adjacent_moves(p)))


def adjacency_label(p: Permutation, q: Permutation) -> IndexPair | None:
    """The label of edge {p, q} if they are adjacent in the permutohedron, else None."""
    _check_orders(p, q)
    diff = [k for k in range(p.n) if p.values[k] != q.values[k]]
    if len(diff) != 2:
        return None
    a, b = diff
    if p.values[a] != q.values[b] or p.values[b] != q.values[a]:
        return None
    if abs(p.values[a] - p.values[b]) != 1:
        return None
    return IndexPair(a + 1, b + 1)


def lex_rank(p: Permutation) -> int:
    """0-based rank of ``p`` in ``all_permutations(p.n)``."""
    vals = p.values
    n = len(vals)
    rank = 0
    for k in range(n):
        smaller = sum(1 for v in vals[k + 1:] if v < vals[k])
        rank += smaller * math.factorial(n - 1 - k)
    return rank
