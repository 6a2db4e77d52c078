"""Multiset matching of complex lists.

Pairs two equal-length lists so that the largest matched distance is as
small as possible (bottleneck assignment), breaking ties by the smallest
total distance (Hungarian step on the admissible edges).
"""
import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching


def has_perfect_matching(mask):
    """True iff the boolean bipartite adjacency ``mask`` admits a perfect matching."""
    mask = np.asarray(mask, dtype=bool)
    n = mask.shape[0]
    if n == 0:
        return True
    if not mask.any(axis=1).all() or not mask.any(axis=0).all():
        return False
    graph = csr_matrix(mask.astype(np.int8))
    match = maximum_bipartite_matching(graph, perm_type="column")
    return bool((match >= 0).all())


def perfect_matching(mask):
    """A perfect matching of ``mask`` as ``match[row] = col``, or None."""
    mask = np.asarray(mask, dtype=bool)
    n = mask.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.intp)
    if not mask.any(axis=1).all() or not mask.any(axis=0).all():
        return None
    match = maximum_bipartite_matching(csr_matrix(mask.astype(np.int8)), perm_type="column")
    if (match < 0).any():
        return None
    return match.astype(np.intp)


def bottleneck_assignment(a, b):
    """Match ``a[i]`` to ``b[perm[i]]`` minimising the maximum distance.

    Returns ``(perm, distances)`` with ``distances[i] = |a[i] - b[perm[i]]|``.
    """
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    if a.size != b.size:
        raise ValueError(f"length mismatch: {a.size} vs {b.size}")
    n = a.size
    if n == 0:
        return np.zeros(0, dtype=np.intp), np.zeros(0)
    dist = np.abs(a[:, None] - b[None, :])
    levels = np.unique(dist)
    # a perfect matching exists at the largest level, so bisect below it
    lo, hi = 0, levels.size - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if has_perfect_matching(dist <= levels[mid]):
            hi = mid
        else:
            lo = mid + 1
    bound = levels[lo]
    cost = np.where(dist <= bound, dist, np.inf)
    rows, cols = linear_sum_assignment(cost)
    perm = np.empty(n, dtype=np.intp)
    perm[rows] = cols
    return perm, dist[np.arange(n), perm]
