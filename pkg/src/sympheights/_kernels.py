"""Bitmask brute-force kernels for small graphs, with optional numba.

Graphs arrive as an int64 array ``adj`` where bit j of ``adj[i]`` marks the
edge {i, j}. Two kernels are provided:

* ``clique_number``: largest complete subgraph, by scanning all subsets;
* ``max_nonedge_matching``: largest set of vertex-disjoint non-adjacent pairs,
  by dynamic programming over subsets.

Set ``SYMPL_DISABLE_NUMBA=1`` to force the pure numpy/python path (it is also
used when numba is not importable). ``BACKEND`` reports which one is active.
"""

from __future__ import annotations

import os

import numpy as np


def _clique_number_numpy(adj: np.ndarray, n: int) -> int:
    masks = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(masks.shape, dtype=bool)
    for i in range(n):
        bit = np.int64(1) << i
        allowed = adj[i] | bit
        has_i = (masks & bit) != 0
        ok &= ~has_i | ((masks & ~allowed) == 0)
    sizes = np.zeros(masks.shape, dtype=np.int64)
    for i in range(n):
        sizes += (masks >> i) & 1
    return int(sizes[ok].max())


def _matching_py(adj, n: int) -> int:
    best = [0] * (1 << n)
    for mask in range(1, 1 << n):
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        b = best[rest]
        cand = rest & ~int(adj[i])
        while cand:
            low = cand & -cand
            v = best[rest & ~low] + 1
            if v > b:
                b = v
            cand &= cand - 1
        best[mask] = b
    return best[(1 << n) - 1]


def _clique_number_nb_impl(adj, n):
    best = 0
    for mask in range(1, 1 << n):
        ok = True
        size = 0
        for i in range(n):
            if (mask >> i) & 1:
                size += 1
                if mask & ~(adj[i] | (1 << i)):
                    ok = False
                    break
        if ok and size > best:
            best = size
    return best


def _matching_nb_impl(adj, n):
    best = np.zeros(1 << n, dtype=np.int64)
    for mask in range(1, 1 << n):
        i = 0
        while not (mask >> i) & 1:
            i += 1
        rest = mask & ~(1 << i)
        b = best[rest]
        for j in range(n):
            if (rest >> j) & 1 and not (adj[i] >> j) & 1:
                v = best[rest & ~(1 << j)] + 1
                if v > b:
                    b = v
        best[mask] = b
    return best[(1 << n) - 1]


def _load_numba():
    if os.environ.get("SYMPL_DISABLE_NUMBA", "").strip() not in ("", "0"):
        return None
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        return None
    return njit(cache=True)(_clique_number_nb_impl), njit(cache=True)(_matching_nb_impl)


_nb = _load_numba()
BACKEND = "numba" if _nb is not None else "numpy"


def clique_number_numpy(adj, n: int) -> int:
    return _clique_number_numpy(np.asarray(adj, dtype=np.int64), n)


def max_nonedge_matching_python(adj, n: int) -> int:
    return _matching_py([int(a) for a in adj], n)


if _nb is not None:
    _clique_nb, _matching_nb = _nb

    def clique_number(adj, n: int) -> int:
        return int(_clique_nb(np.asarray(adj, dtype=np.int64), n))

    def max_nonedge_matching(adj, n: int) -> int:
        return int(_matching_nb(np.asarray(adj, dtype=np.int64), n))

else:
    clique_number = clique_number_numpy
    max_nonedge_matching = max_nonedge_matching_python
