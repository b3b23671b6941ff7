"""
Integer kernels for batch work over many permutations.

Every kernel exists twice: a numba ``@njit`` loop and a vectorized numpy
version. The numba path is used when numba imports and the environment
variable ``PERMRANK_DISABLE_NUMBA`` is unset (or ``0``). Both paths are
exposed (``*_numba`` / ``*_numpy``) for the tests and the benchmark.

Permutations are passed as ``(N, n)`` int64 arrays of 1-based values.
Discordance sets travel as int64 bitmasks with bit ``pair_rank`` per pair,
which caps the order at 11 (55 pairs).
"""
import os

import numpy as np

MAX_MASK_ORDER = 11

_flag = os.environ.get("PERMRANK_DISABLE_NUMBA", "").strip().lower()
_disabled = _flag not in ("", "0", "false", "no")

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not _disabled

if HAVE_NUMBA:
    njit = numba.njit(cache=True, nogil=True)
else:  # pragma: no cover
    def njit(fn):
        return fn


def _pair_indices(n):
    a, b = np.triu_indices(n, k=1)
    return a.astype(np.int64), b.astype(np.int64)


# -- discordance masks --------------------------------------------------------

@njit
def _masks_numba(left, right):
    na, n = left.shape
    nb = right.shape[0]
    out = np.zeros((na, nb), dtype=np.int64)
    for x in range(na):
        for y in range(nb):
            m = 0
            bit = 0
            for a in range(n - 1):
                for b in range(a + 1, n):
                    if (left[x, b] - left[x, a]) * (right[y, b] - right[y, a]) < 0:
                        m |= np.int64(1) << bit
                    bit += 1
            out[x, y] = m
    return out


def _masks_numpy(left, right):
    n = left.shape[1]
    a, b = _pair_indices(n)
    sl = np.sign(left[:, b] - left[:, a]).astype(np.int8)
    sr = np.sign(right[:, b] - right[:, a]).astype(np.int8)
    disc = (sl[:, None, :] * sr[None, :, :]) < 0
    bits = np.left_shift(np.int64(1), np.arange(len(a), dtype=np.int64))
    return (disc.astype(np.int64) * bits).sum(axis=2)


def discordance_masks(left, right=None):
    """``out[x, y]`` = bitmask of the discordance set of ``left[x]`` and ``right[y]``."""
    left = np.ascontiguousarray(left, dtype=np.int64)
    right = left if right is None else np.ascontiguousarray(right, dtype=np.int64)
    if left.shape[1] != right.shape[1]:
        raise ValueError("permutation arrays of different orders")
    if left.shape[1] > MAX_MASK_ORDER:
        raise ValueError(f"bitmask kernels support order <= {MAX_MASK_ORDER}")
    if USE_NUMBA:
        return _masks_numba(left, right)
    return _masks_numpy(left, right)


# -- weighted sums over masks --------------------------------------------------

@njit
def _weighted_numba(masks, weights):
    flat = masks.ravel()
    out = np.zeros(flat.shape[0], dtype=np.int64)
    k = weights.shape[0]
    for x in range(flat.shape[0]):
        m = flat[x]
        s = 0
        for bit in range(k):
            if (m >> bit) & 1:
                s += weights[bit]
        out[x] = s
    return out.reshape(masks.shape)


def _weighted_numpy(masks, weights):
    k = weights.shape[0]
    bits = (masks[..., None] >> np.arange(k, dtype=np.int64)) & 1
    return bits @ weights


def weighted_sums(masks, weights):
    """Sum of ``weights[bit]`` over the set bits of every mask (exact int64).

    Callers must ensure ``sum(weights) < 2**62``.
    """
    masks = np.ascontiguousarray(masks, dtype=np.int64)
    weights = np.ascontiguousarray(weights, dtype=np.int64)
    if USE_NUMBA:
        return _weighted_numba(masks, weights)
    return _weighted_numpy(masks, weights)


# -- permutohedron neighbor table ---------------------------------------------

@njit
def _lex_ranks_numba(perms):
    N, n = perms.shape
    fact = np.ones(n + 1, dtype=np.int64)
    for k in range(1, n + 1):
        fact[k] = fact[k - 1] * k
    out = np.zeros(N, dtype=np.int64)
    for x in range(N):
        r = 0
        for k in range(n):
            c = 0
            for m in range(k + 1, n):
                if perms[x, m] < perms[x, k]:
                    c += 1
            r += c * fact[n - 1 - k]
        out[x] = r
    return out


def _lex_ranks_numpy(perms):
    N, n = perms.shape
    r = np.zeros(N, dtype=np.int64)
    f = 1
    for k in range(n - 1, -1, -1):
        c = (perms[:, k + 1:] < perms[:, k:k + 1]).sum(axis=1)
        r += c * f
        f *= n - k
    return r


@njit
def _neighbors_numba(perms):
    N, n = perms.shape
    nbr_vals = np.empty((N, n - 1, n), dtype=np.int64)
    label_i = np.empty((N, n - 1), dtype=np.int64)
    label_j = np.empty((N, n - 1), dtype=np.int64)
    pos = np.empty(n + 1, dtype=np.int64)
    for x in range(N):
        for k in range(n):
            pos[perms[x, k]] = k
        for v in range(1, n):
            a = pos[v]
            b = pos[v + 1]
            for k in range(n):
                nbr_vals[x, v - 1, k] = perms[x, k]
            nbr_vals[x, v - 1, a] = v + 1
            nbr_vals[x, v - 1, b] = v
            label_i[x, v - 1] = min(a, b) + 1
            label_j[x, v - 1] = max(a, b) + 1
    flat = nbr_vals.reshape(N * (n - 1), n)
    ranks = _lex_ranks_numba(flat).reshape(N, n - 1)
    return ranks, label_i, label_j


def _neighbors_numpy(perms):
    N, n = perms.shape
    pos = np.argsort(perms, axis=1)  # pos[x, v-1] = 0-based position of value v
    rows = np.arange(N)[:, None]
    a = pos[:, :-1]
    b = pos[:, 1:]
    nbr = np.repeat(perms[:, None, :], n - 1, axis=1)
    vals = np.arange(1, n, dtype=np.int64)[None, :]
    idx = np.arange(n - 1)[None, :]
    nbr[rows, idx, a] = vals + 1
    nbr[rows, idx, b] = vals
    ranks = _lex_ranks_numpy(nbr.reshape(N * (n - 1), n)).reshape(N, n - 1)
    return ranks, np.minimum(a, b) + 1, np.maximum(a, b) + 1


def neighbor_table(perms):
    """For each permutation and each value v < n, the lex rank of the
    permutation with v and v+1 swapped, plus the 1-based position pair.

    Returns ``(ranks, label_i, label_j)``, each ``(N, n-1)``; column ``v-1``
    belongs to the swap of values v and v+1.
    """
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    if perms.shape[1] < 2:
        e = np.zeros((perms.shape[0], 0), dtype=np.int64)
        return e, e, e
    if USE_NUMBA:
        return _neighbors_numba(perms)
    return _neighbors_numpy(perms)


def lex_ranks(perms):
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    if USE_NUMBA:
        return _lex_ranks_numba(perms)
    return _lex_ranks_numpy(perms)


# -- breadth-first search -----------------------------------------------------

@njit
def _bfs_numba(neighbors, sources):
    N, deg = neighbors.shape
    out = np.full((sources.shape[0], N), -1, dtype=np.int64)
    queue = np.empty(N, dtype=np.int64)
    for s in range(sources.shape[0]):
        src = sources[s]
        out[s, src] = 0
        head = 0
        tail = 0
        queue[tail] = src
        tail += 1
        while head < tail:
            u = queue[head]
            head += 1
            du = out[s, u]
            for k in range(deg):
                v = neighbors[u, k]
                if out[s, v] < 0:
                    out[s, v] = du + 1
                    queue[tail] = v
                    tail += 1
    return out


def _bfs_numpy(neighbors, sources):
    N = neighbors.shape[0]
    S = sources.shape[0]
    out = np.full((S, N), -1, dtype=np.int64)
    frontier = np.zeros((S, N), dtype=bool)
    frontier[np.arange(S), sources] = True
    out[frontier] = 0
    step = 0
    while frontier.any():
        step += 1
        reached = np.zeros((S, N), dtype=bool)
        if neighbors.shape[1]:
            # v is reached if any neighbour of v is in the frontier (graph is undirected)
            reached = frontier[:, neighbors].any(axis=2)
        reached &= out < 0
        out[reached] = step
        frontier = reached
    return out


def bfs_distances(neighbors, sources=None):
    """Hop distances from each source to every vertex of an undirected graph
    given as an ``(N, deg)`` neighbor-index table; -1 marks unreachable."""
    neighbors = np.ascontiguousarray(neighbors, dtype=np.int64)
    if sources is None:
        sources = np.arange(neighbors.shape[0], dtype=np.int64)
    sources = np.ascontiguousarray(sources, dtype=np.int64)
    if USE_NUMBA:
        return _bfs_numba(neighbors, sources)
    return _bfs_numpy(neighbors, sources)


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
