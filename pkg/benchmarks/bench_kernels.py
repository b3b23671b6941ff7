"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--n 7] [--repeat 5]

Each kernel is called once untimed (JIT warm-up), then the best of
``--repeat`` runs is reported. Outputs of both backends are compared.
"""
import argparse
import time
from itertools import permutations

import numpy as np

from permrank import _kernels as K


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=7, help="order of the permutations (default 7)")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    n = args.n
    perms = np.array(list(permutations(range(1, n + 1))), dtype=np.int64)
    left = perms[: min(len(perms), 400)]
    masks = K._masks_numpy(left, perms)
    weights = np.arange(1, n * (n - 1) // 2 + 1, dtype=np.int64)
    nbrs = K._neighbors_numpy(perms)[0]
    sources = np.arange(0, len(perms), max(1, len(perms) // 64), dtype=np.int64)

    cases = [
        ("discordance masks", lambda: K._masks_numba(left, perms), lambda: K._masks_numpy(left, perms)),
        ("weighted sums", lambda: K._weighted_numba(masks, weights), lambda: K._weighted_numpy(masks, weights)),
        ("lex ranks", lambda: K._lex_ranks_numba(perms), lambda: K._lex_ranks_numpy(perms)),
        ("neighbor table", lambda: K._neighbors_numba(perms), lambda: K._neighbors_numpy(perms)),
        ("bfs", lambda: K._bfs_numba(nbrs, sources), lambda: K._bfs_numpy(nbrs, sources)),
    ]
    print(f"n = {n}, {len(perms)} permutations, best of {args.repeat}")
    print(f"{'kernel':<20}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}  same")
    for name, fast, slow in cases:
        a, b = fast(), slow()
        same = all(np.array_equal(x, y) for x, y in zip(a, b)) if isinstance(a, tuple) else np.array_equal(a, b)
        tn, tp = best_of(fast, args.repeat), best_of(slow, args.repeat)
        print(f"{name:<20}{tn * 1e3:>12.3f}{tp * 1e3:>12.3f}{tp / tn:>10.1f}  {'yes' if same else 'NO'}")


if __name__ == "__main__":
    main()
