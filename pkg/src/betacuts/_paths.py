"""Binary-heap Dijkstra on a CSR digraph (numba)."""
from __future__ import annotations

import numpy as np
from numba import njit, prange


@njit(cache=True)
def _less(d1, h1, n1, d2, h2, n2):
    if d1 != d2:
        return d1 < d2
    if h1 != h2:
        return h1 < h2
    return n1 < n2


@njit(cache=True)
def _heap_push(hd, hh, hn, size, d, h, n):
    i = size
    hd[i] = d
    hh[i] = h
    hn[i] = n
    while i > 0:
        p = (i - 1) >> 1
        # order by (distance, hops, node) so pops are deterministic
        if not _less(hd[i], hh[i], hn[i], hd[p], hh[p], hn[p]):
            break
        hd[p], hd[i] = hd[i], hd[p]
        hh[p], hh[i] = hh[i], hh[p]
        hn[p], hn[i] = hn[i], hn[p]
        i = p
    return size + 1


@njit(cache=True)
def _heap_pop(hd, hh, hn, size):
    d, h, n = hd[0], hh[0], hn[0]
    size -= 1
    hd[0] = hd[size]
    hh[0] = hh[size]
    hn[0] = hn[size]
    i = 0
    while True:
        l = 2 * i + 1
        if l >= size:
            break
        c = l
        r = l + 1
        if r < size and _less(hd[r], hh[r], hn[r], hd[l], hh[l], hn[l]):
            c = r
        if not _less(hd[c], hh[c], hn[c], hd[i], hh[i], hn[i]):
            break
        hd[c], hd[i] = hd[i], hd[c]
        hh[c], hh[i] = hh[i], hh[c]
        hn[c], hn[i] = hn[i], hn[c]
        i = c
    return d, h, n, size


@njit(cache=True)
def dijkstra(indptr, dst, weight, source, target, cutoff, pred_arc):
    """Distance from ``source`` to ``target``; stops once the heap minimum reaches ``cutoff``.

    Among equally short paths the one with fewest arcs wins, so callers
    should pass weights whose sums are exact (see :func:`snap_weights`).
    ``pred_arc`` (length = node count) receives the arc used to reach each
    settled node (-1 for the source / unreached). Returns ``inf`` when the
    target is not reached below the cutoff.
    """
    n = indptr.shape[0] - 1
    dist = np.full(n, np.inf)
    hops = np.zeros(n, dtype=np.int64)
    done = np.zeros(n, dtype=np.bool_)
    pred_arc[:] = -1
    cap = dst.shape[0] + 1
    hd = np.empty(cap)
    hh = np.empty(cap, dtype=np.int64)
    hn = np.empty(cap, dtype=np.int64)
    size = 0
    dist[source] = 0.0
    size = _heap_push(hd, hh, hn, size, 0.0, 0, source)
    while size > 0:
        d, h, u, size = _heap_pop(hd, hh, hn, size)
        if done[u]:
            continue
        if d >= cutoff:
            break
        done[u] = True
        if u == target:
            return d
        for a in range(indptr[u], indptr[u + 1]):
            w = dst[a]
            if done[w]:
                continue
            nd = d + weight[a]
            if nd < dist[w] or (nd == dist[w] and h + 1 < hops[w]):
                dist[w] = nd
                hops[w] = h + 1
                pred_arc[w] = a
                size = _heap_push(hd, hh, hn, size, nd, h + 1, w)
    return np.inf


GRID = 2.0 ** -40


def snap_weights(weight: np.ndarray) -> np.ndarray:
    """Round to a dyadic grid so path sums are exact and ties are real ties."""
    return np.round(np.asarray(weight) / GRID) * GRID


@njit(cache=True, parallel=True)
def twin_distances(indptr, dst, weight, sources, cutoff):
    """Distance from each ``s`` in ``sources`` to its twin ``s ^ 1`` (capped by ``cutoff``)."""
    out = np.full(sources.shape[0], np.inf)
    n = indptr.shape[0] - 1
    for i in prange(sources.shape[0]):
        pred = np.empty(n, dtype=np.int64)
        s = sources[i]
        out[i] = dijkstra(indptr, dst, weight, s, s ^ 1, cutoff, pred)
    return out


@njit(cache=True)
def group_min(inverse, lengths, n_groups):
    """Per-group minimum and the first entry index attaining it (strict ``<``)."""
    best = np.full(n_groups, np.inf)
    arg = np.full(n_groups, -1, dtype=np.int64)
    for i in range(inverse.shape[0]):
        g = inverse[i]
        if lengths[i] < best[g]:
            best[g] = lengths[i]
            arg[g] = i
    return best, arg
