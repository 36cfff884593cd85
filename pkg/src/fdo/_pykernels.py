"""Pure-Python/numpy implementations of the hot kernels (fallback backend)."""

from __future__ import annotations

import numpy as np


def first_fit(weights, perm, capacity):
    """Place items in ``perm`` order into the first bin with room.

    Returns ``(bin_of, fills)``: the bin index of every item (indexed by item)
    and the fill of every bin.
    """
    weights = np.asarray(weights, dtype=np.float64)
    perm = np.asarray(perm, dtype=np.int64)
    bin_of = np.full(weights.size, -1, dtype=np.int64)
    fills: list[float] = []
    for item in perm:
        w = weights[item]
        for k, f in enumerate(fills):
            if f + w <= capacity:
                fills[k] = f + w
                bin_of[item] = k
                break
        else:
            bin_of[item] = len(fills)
            fills.append(float(w))
    return bin_of, np.array(fills, dtype=np.float64)


def perm_diff(a, b):
    """Swaps (as an ``(m, 2)`` array) turning ``b`` into ``a``; ``m`` is minimal."""
    a = np.asarray(a, dtype=np.int64)
    cur = np.array(b, dtype=np.int64)
    pos = np.empty(cur.size, dtype=np.int64)
    pos[cur] = np.arange(cur.size)
    swaps = []
    for i in range(cur.size):
        if cur[i] != a[i]:
            j = pos[a[i]]
            vi = cur[i]
            cur[i], cur[j] = a[i], vi
            pos[vi] = j
            pos[a[i]] = i
            swaps.append((i, j))
    return np.array(swaps, dtype=np.int64).reshape(-1, 2)


def apply_swaps(perm, swaps):
    out = np.array(perm, dtype=np.int64)
    for i, j in np.asarray(swaps, dtype=np.int64).reshape(-1, 2):
        out[i], out[j] = out[j], out[i]
    return out


def subset_sum_counts(values, k):
    """Number of ``k``-subsets of ``values`` (non-negative ints) per total.

    Entry ``s`` of the result counts subsets summing to ``s``.
    """
    values = np.asarray(values, dtype=np.int64)
    total = int(values.sum())
    table = np.zeros((k + 1, total + 1), dtype=np.int64)
    table[0, 0] = 1
    for v in values:
        for j in range(k, 0, -1):
            table[j, v:] += table[j - 1, : total + 1 - v]
    return table[k]


def star_discrepancy_grid(points, grid):
    """Largest ``|fraction of points in [0, g) - volume of [0, g)|`` over grid corners.

    Corners run over ``{1/grid, ..., 1}`` in every coordinate. A point ``p``
    lies in ``[0, c/grid)`` exactly when ``floor(p * grid) < c``.
    """
    pts = np.asarray(points, dtype=np.float64)
    n, d = pts.shape
    idx = np.floor(pts * grid).astype(np.int64)
    idx = idx[np.all((idx >= 0) & (idx < grid), axis=1)]
    hist = np.zeros((grid,) * d, dtype=np.float64)
    np.add.at(hist, tuple(idx.T), 1.0)
    for axis in range(d):
        hist = np.cumsum(hist, axis=axis)
    edges = np.arange(1, grid + 1) / grid
    vol = edges
    for _ in range(d - 1):
        vol = np.multiply.outer(vol, edges)
    return float(np.max(np.abs(hist / n - vol)))
