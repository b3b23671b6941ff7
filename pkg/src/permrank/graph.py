"""
The labeled edge-graph of the permutohedron and betweenness in S_n.

Vertices are all n! permutations indexed by lexicographic rank. Two
permutations are joined when one is obtained from the other by swapping
two positions that hold consecutive values; the edge is labeled with that
position pair.

Distance and betweenness queries never need the graph: graph distance is
the size of the discordance set. The graph exists for verification, path
enumeration and DOT export, and its construction is capped (default
``n <= 8``, overridable with ``PERMRANK_CAP``).
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from .errors import (
    InvalidCycle,
    InvalidPath,
    NotAMetric,
    NotDistinct,
    OrderMismatch,
    OrderTooLarge,
)
from .perm import (
    IndexPair,
    Permutation,
    adjacency_label,
    adjacent_moves,
    adjacent_transposition,
    all_permutations,
    discordance_set,
    lex_rank,
)
from .weights import WeightMatrix, distance

DEFAULT_CAP = 8


def graph_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("PERMRANK_CAP")
    return int(env) if env else DEFAULT_CAP


@dataclass(frozen=True, eq=False)
class LabeledGraph:
    n: int
    vertices: tuple
    neighbors: np.ndarray  # (n!, n-1) vertex indices, column v-1 swaps values v, v+1
    label_i: np.ndarray
    label_j: np.ndarray

    def __len__(self):
        return len(self.vertices)

    @cached_property
    def index(self) -> dict:
        return {p: k for k, p in enumerate(self.vertices)}

    def adjacency(self, v: int) -> list[tuple[int, IndexPair]]:
        """Neighbors of vertex index ``v`` with edge labels, sorted by label."""
        out = [
            (int(self.neighbors[v, c]), IndexPair(int(self.label_i[v, c]), int(self.label_j[v, c])))
            for c in range(self.neighbors.shape[1])
        ]
        out.sort(key=lambda t: t[1])
        return out

    def edges(self) -> Iterator[tuple[int, int, IndexPair]]:
        """Each edge once as ``(u, v, label)`` with u < v; ordered by u then label."""
        for u in range(len(self.vertices)):
            for v, lab in self.adjacency(u):
                if u < v:
                    yield u, v, lab

    @property
    def edge_count(self) -> int:
        return len(self.vertices) * (self.n - 1) // 2

    def degree(self, v: int) -> int:
        return self.neighbors.shape[1]

    def has_edge(self, p: Permutation, q: Permutation) -> bool:
        u = self.index.get(p)
        v = self.index.get(q)
        if u is None or v is None:
            return False
        return bool((self.neighbors[u] == v).any())

    def bfs(self, sources: Sequence[int] | None = None) -> np.ndarray:
        src = None if sources is None else np.asarray(sources, dtype=np.int64)
        return _kernels.bfs_distances(self.neighbors, src)


def build_graph(n: int, cap: int | None = None) -> LabeledGraph:
    limit = graph_cap(cap)
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    if n > limit:
        raise OrderTooLarge(f"G_{n} has {math.factorial(n)} vertices; cap is n <= {limit}")
    verts = tuple(all_permutations(n))
    arr = np.array([p.values for p in verts], dtype=np.int64).reshape(len(verts), n)
    ranks, li, lj = _kernels.neighbor_table(arr)
    return LabeledGraph(n, verts, ranks, li, lj)


def graph_distance(p: Permutation, q: Permutation) -> int:
    return len(discordance_set(p, q))


@dataclass(frozen=True)
class Path:
    vertices: tuple
    labels: tuple

    @classmethod
    def through(cls, vertices: Sequence[Permutation]) -> Path:
        """Validate a vertex sequence as a simple path and compute its labels."""
        vs = tuple(vertices)
        if not vs:
            raise InvalidPath("a path needs at least one vertex")
        if len(set(vs)) != len(vs):
            raise InvalidPath("path repeats a vertex")
        labels = []
        for a, b in zip(vs, vs[1:]):
            lab = adjacency_label(a, b)
            if lab is None:
                raise InvalidPath(f"{a} and {b} are not adjacent")
            labels.append(lab)
        return cls(vs, tuple(labels))

    def __len__(self):
        return len(self.labels)


def is_shortest_path(path: Path) -> bool:
    return len(set(path.labels)) == len(path.labels)


def shortest_paths(g: LabeledGraph | None, p: Permutation, q: Permutation) -> Iterator[Path]:
    """Lazily yield every shortest p-q path, lexicographically by label sequence.

    A step along label (i, j) shortens the distance exactly when (i, j) is
    still discordant with ``q``, so only those moves are followed.
    """
    if p.n != q.n:
        raise OrderMismatch(f"permutations of orders {p.n} and {q.n}")
    if g is not None and (p not in g.index or q not in g.index):
        raise ValueError("endpoints must be vertices of the graph")

    def walk(cur, verts, labels):
        remaining = discordance_set(cur, q)
        if not remaining:
            yield Path(tuple(verts), tuple(labels))
            return
        for lab, nxt in adjacent_moves(cur):
            if lab in remaining:
                verts.append(nxt)
                labels.append(lab)
                yield from walk(nxt, verts, labels)
                verts.pop()
                labels.pop()

    yield from walk(p, [p], [])


def count_shortest_paths(p: Permutation, q: Permutation) -> int:
    memo: dict = {}

    def count(cur):
        if cur == q:
            return 1
        if cur in memo:
            return memo[cur]
        remaining = discordance_set(cur, q)
        total = sum(count(nxt) for lab, nxt in adjacent_moves(cur) if lab in remaining)
        memo[cur] = total
        return total

    return count(p)


def _distinct(*points):
    if len(set(points)) != len(points):
        raise NotDistinct("betweenness needs pairwise distinct points")
    n = points[0].n
    if any(x.n != n for x in points):
        raise OrderMismatch("points of different orders")


def union_condition(p: Permutation, m: Permutation, q: Permutation) -> bool:
    """dsc(p, q) == dsc(p, m) | dsc(m, q)."""
    return discordance_set(p, q) == (discordance_set(p, m) | discordance_set(m, q))


def disjoint_condition(p: Permutation, m: Permutation, q: Permutation) -> bool:
    return discordance_set(p, m).isdisjoint(discordance_set(m, q))


def lies_between_dsc(p: Permutation, m: Permutation, q: Permutation) -> bool:
    _distinct(p, m, q)
    return disjoint_condition(p, m, q)


def lies_between_metric(W: WeightMatrix, p: Permutation, m: Permutation, q: Permutation) -> bool:
    if not W.is_strict:
        raise NotAMetric("betweenness is only characterized for strictly positive weights")
    _distinct(p, m, q)
    if W.n != p.n:
        raise OrderMismatch(f"weight order {W.n} vs permutation order {p.n}")
    return distance(W, p, q) == distance(W, p, m) + distance(W, m, q)


def is_vertex_transitive_check(g: LabeledGraph, t: Permutation) -> bool:
    """Right composition by ``t`` maps every edge of ``g`` onto an edge."""
    if t.n != g.n:
        raise OrderMismatch(f"composer of order {t.n} for G_{g.n}")
    image = [v.compose(t) for v in g.vertices]
    idx = g.index
    for u, v, _ in g.edges():
        a, b = idx[image[u]], idx[image[v]]
        if not (g.neighbors[a] == b).any():
            return False
    return True


@dataclass(frozen=True)
class Cycle:
    vertices: tuple
    labels: tuple  # labels[k] is the edge vertices[k] -- vertices[k+1 mod len]

    @classmethod
    def through(cls, vertices: Sequence[Permutation]) -> Cycle:
        vs = tuple(vertices)
        if len(vs) < 3:
            raise InvalidCycle("a cycle needs at least 3 vertices")
        if len(set(vs)) != len(vs):
            raise InvalidCycle("cycle repeats a vertex")
        labels = []
        for k, a in enumerate(vs):
            b = vs[(k + 1) % len(vs)]
            lab = adjacency_label(a, b)
            if lab is None:
                raise InvalidCycle(f"{a} and {b} are not adjacent")
            labels.append(lab)
        return cls(vs, tuple(labels))

    @classmethod
    def from_transpositions(cls, start: Permutation, pairs: Sequence[IndexPair | tuple[int, int]]) -> Cycle:
        """Apply position swaps in order from ``start``; the last must close the cycle."""
        vs = [start]
        cur = start
        for pr in pairs:
            if not isinstance(pr, IndexPair):
                pr = IndexPair.of(*pr)
            cur = adjacent_transposition(cur, pr)
            vs.append(cur)
        if vs[-1] != start:
            raise InvalidCycle("transposition sequence does not return to the start")
        return cls.through(vs[:-1])

    def __len__(self):
        return len(self.vertices)


def simple_cycles(g: LabeledGraph, max_length: int) -> Iterator[Cycle]:
    """Every simple cycle of length <= ``max_length``, each exactly once.

    A cycle is reported from its smallest vertex index, in the direction
    whose second vertex is smaller than its last.
    """
    nbrs = [[int(x) for x in sorted(g.neighbors[v])] for v in range(len(g))]
    verts = g.vertices

    for s in range(len(g)):
        path = [s]
        on_path = {s}

        def extend():
            u = path[-1]
            for v in nbrs[u]:
                if v == s and len(path) >= 3 and path[1] < path[-1]:
                    yield Cycle.through([verts[k] for k in path])
                elif v > s and v not in on_path and len(path) < max_length:
                    path.append(v)
                    on_path.add(v)
                    yield from extend()
                    path.pop()
                    on_path.discard(v)

        yield from extend()


def to_dot(g: LabeledGraph, name: str | None = None) -> str:
    """Undirected DOT text; vertices named by value sequence, edges labeled "(i,j)"."""
    lines = [f"graph {name or f'G{g.n}'} {{"]
    for p in g.vertices:
        lines.append(f'  "{p}";')
    for u, v, lab in g.edges():
        lines.append(f'  "{g.vertices[u]}" -- "{g.vertices[v]}" [label="{lab}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def vertex_index(p: Permutation) -> int:
    return lex_rank(p)
