import os
import subprocess
import sys
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permrank import _kernels as K
from permrank.perm import Permutation, all_permutations, discordance_set, lex_rank, pair_count
from permrank.weights import distance, generic_weights

needs_numba = pytest.mark.skipif(not K.HAVE_NUMBA, reason="numba not installed")


def perm_array(n, count=None, seed=0):
    if count is None:
        return np.array(list(permutations(range(1, n + 1))), dtype=np.int64).reshape(-1, n)
    rng = np.random.default_rng(seed)
    return np.array([rng.permutation(n) + 1 for _ in range(count)], dtype=np.int64)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_masks_match_python(n):
    arr = perm_array(n)
    masks = K.discordance_masks(arr)
    pts = all_permutations(n)
    for x, p in enumerate(pts):
        for y, q in enumerate(pts):
            assert masks[x, y] == discordance_set(p, q).mask


@needs_numba
@pytest.mark.parametrize("n", [2, 4, 7, 11])
def test_masks_backends_agree(n):
    a, b = perm_array(n, 30, seed=n), perm_array(n, 17, seed=n + 1)
    assert np.array_equal(K._masks_numba(a, b), K._masks_numpy(a, b))


@needs_numba
def test_weighted_backends_agree():
    masks = K._masks_numpy(perm_array(5), perm_array(5)[:10])
    w = np.array([3, 1, 4, 1, 5, 9, 2, 6, 5, 3], dtype=np.int64)
    assert np.array_equal(K._weighted_numba(masks, w), K._weighted_numpy(masks, w))


def test_weighted_sums_give_exact_distances():
    W = generic_weights(4)
    arr = perm_array(4)
    scaled, total = W.scaled()
    sums = K.weighted_sums(K.discordance_masks(arr), np.array(scaled))
    pts = all_permutations(4)
    for x, p in enumerate(pts):
        for y, q in enumerate(pts):
            assert sums[x, y] == distance(W, p, q) * total


@needs_numba
@pytest.mark.parametrize("n", [2, 3, 5, 6])
def test_neighbor_backends_agree(n):
    arr = perm_array(n)
    for got, want in zip(K._neighbors_numba(arr), K._neighbors_numpy(arr)):
        assert np.array_equal(got, want)
    assert np.array_equal(K._lex_ranks_numba(arr), K._lex_ranks_numpy(arr))


def test_lex_ranks_sequential():
    arr = perm_array(5)
    assert np.array_equal(K.lex_ranks(arr), np.arange(120))


@settings(max_examples=30)
@given(st.integers(1, 9).flatmap(lambda n: st.permutations(range(1, n + 1))))
def test_lex_rank_kernel_matches_python(vals):
    arr = np.array([vals], dtype=np.int64)
    assert K.lex_ranks(arr)[0] == lex_rank(Permutation(tuple(vals)))


@needs_numba
@pytest.mark.parametrize("n", [1, 3, 4, 5])
def test_bfs_backends_agree(n):
    ranks, _, _ = K.neighbor_table(perm_array(n))
    src = np.arange(len(ranks), dtype=np.int64)[::7]
    assert np.array_equal(K._bfs_numba(ranks, src), K._bfs_numpy(ranks, src))


def test_mask_order_limit():
    with pytest.raises(ValueError):
        K.discordance_masks(perm_array(12, 2))


def test_env_flag_selects_numpy():
    env = dict(os.environ, PERMRANK_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from permrank import _kernels as K; print(K.backend())"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"


def test_numpy_backend_end_to_end():
    env = dict(os.environ, PERMRANK_DISABLE_NUMBA="1")
    code = (
        "from permrank.graph import build_graph\n"
        "from permrank.perm import discordance_set\n"
        "g = build_graph(4)\n"
        "D = g.bfs()\n"
        "assert all(D[a, b] == len(discordance_set(p, q))"
        " for a, p in enumerate(g.vertices) for b, q in enumerate(g.vertices))\n"
        "print('ok')\n"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "ok"


def test_pair_count_fits_mask():
    assert pair_count(K.MAX_MASK_ORDER) <= 62
