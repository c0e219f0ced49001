"""Compiled edge-lune kernels.

Edges dominate the distilling cost (every pair of points is visited), so
the degree-1 lune, its components and the matching partner are computed
here with numba. All kernels release the GIL and only write to the rows
they are handed, so disjoint row ranges can run in parallel threads.

For an edge (a, b) with a < b and length r, a vertex x is in the lune
when both substituted edges come earlier: d(x, a) < r, or equal with
x < b; and d(x, b) < r, or equal with x < a. Two lune vertices p < q are
joined when d(p, q) < r, or equal with p < a.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def edge_lune(d, a, b, out):
    """Write the lune of (a, b) into ``out`` in increasing order; return its size."""
    n = d.shape[0]
    r = d[a, b]
    m = 0
    for x in range(n):
        if x == a or x == b:
            continue
        dxa = d[x, a]
        if dxa > r or (dxa == r and x > b):
            continue
        dxb = d[x, b]
        if dxb > r or (dxb == r and x > a):
            continue
        out[m] = x
        m += 1
    return m


@njit(cache=True, nogil=True)
def edge_partner(d, a, b):
    """Earliest lune vertex of (a, b), or -1 for an empty lune."""
    n = d.shape[0]
    r = d[a, b]
    for x in range(n):
        if x == a or x == b:
            continue
        dxa = d[x, a]
        if dxa > r or (dxa == r and x > b):
            continue
        dxb = d[x, b]
        if dxb > r or (dxb == r and x > a):
            continue
        return x
    return -1


@njit(cache=True, nogil=True)
def lune_components(d, a, b, lune, m, reps, pending, stack):
    """Count components of the lune graph; their minima go into ``reps``.

    ``pending`` holds unvisited members in increasing order and shrinks as
    the search proceeds, so each popped vertex only scans what is left.
    Each new component is rooted at the smallest unvisited vertex, which
    is therefore the component minimum.
    """
    r = d[a, b]
    for i in range(m):
        pending[i] = lune[i]
    npend = m
    ncomp = 0
    while npend > 0:
        root = pending[0]
        reps[ncomp] = root
        ncomp += 1
        # drop root, keep order
        for i in range(npend - 1):
            pending[i] = pending[i + 1]
        npend -= 1
        top = 0
        stack[top] = root
        top += 1
        while top > 0 and npend > 0:
            top -= 1
            u = stack[top]
            k = 0
            for i in range(npend):
                v = pending[i]
                duv = d[u, v]
                if duv < r or (duv == r and min(u, v) < a):
                    stack[top] = v
                    top += 1
                else:
                    pending[k] = v
                    k += 1
            npend = k
    return ncomp


@njit(cache=True, nogil=True)
def edge_representatives(d, a, b):
    n = d.shape[0]
    lune = np.empty(n, dtype=np.int64)
    reps = np.empty(n, dtype=np.int64)
    pending = np.empty(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    m = edge_lune(d, a, b, lune)
    c = lune_components(d, a, b, lune, m, reps, pending, stack)
    return reps[:c].copy()


@njit(cache=True, nogil=True)
def scan_rows(d, lo, hi, partner, store):
    """Visit every edge (a, b) with lo <= a < hi and a < b.

    Records the matching partner apex in ``partner[a, b]`` when ``store``
    is set and returns the edges whose lune has two or more components,
    as an (k, 2) array in increasing (a, b) order.
    """
    n = d.shape[0]
    lune = np.empty(n, dtype=np.int64)
    reps = np.empty(n, dtype=np.int64)
    pending = np.empty(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    multi = np.empty((16, 2), dtype=np.int64)
    k = 0
    for a in range(lo, hi):
        for b in range(a + 1, n):
            m = edge_lune(d, a, b, lune)
            if store:
                partner[a, b] = lune[0] if m > 0 else -1
            if m < 2:
                continue
            c = lune_components(d, a, b, lune, m, reps, pending, stack)
            if c > 1:
                if k == multi.shape[0]:
                    grown = np.empty((2 * k, 2), dtype=np.int64)
                    grown[:k] = multi
                    multi = grown
                multi[k, 0] = a
                multi[k, 1] = b
                k += 1
    return multi[:k].copy()


@njit(cache=True, nogil=True)
def empty_lune_rows(d, lo, hi, out):
    """Mark ``out[a, b]`` for edges in rows [lo, hi) whose lune is empty."""
    n = d.shape[0]
    for a in range(lo, hi):
        for b in range(a + 1, n):
            out[a, b] = edge_partner(d, a, b) < 0


# Lunes of simplices of any dimension. ``y`` is the sorted vertex array.

@njit(cache=True, nogil=True)
def _diam(d, y):
    r = 0.0
    for i in range(len(y)):
        for j in range(i + 1, len(y)):
            if d[y[i], y[j]] > r:
                r = d[y[i], y[j]]
    return r


@njit(cache=True, nogil=True)
def _in_lune(d, y, r, x):
    k = len(y)
    for i in range(k):
        if x == y[i]:
            return False
    for i in range(k):
        # diameter of y with y[i] replaced by x
        s = 0.0
        for j in range(k):
            if j != i and d[x, y[j]] > s:
                s = d[x, y[j]]
        for j in range(k):
            for l in range(j + 1, k):
                if j != i and l != i and d[y[j], y[l]] > s:
                    s = d[y[j], y[l]]
        # same-diameter substitutes precede exactly when x < y[i]
        if s > r or (s == r and x > y[i]):
            return False
    return True


@njit(cache=True, nogil=True)
def _joined(d, y, r, p, q, tmp):
    k = len(y)
    for i in range(k):
        for j in range(i + 1, k):
            s = d[p, q]
            m = 0
            for l in range(k):
                if l != i and l != j:
                    v = y[l]
                    s = max(s, d[p, v], d[q, v])
                    for t in range(l + 1, k):
                        if t != i and t != j:
                            s = max(s, d[v, y[t]])
                    tmp[m] = v
                    m += 1
            if s > r:
                return False
            if s == r:
                tmp[m] = p
                tmp[m + 1] = q
                tmp[:k].sort()
                less = False
                for l in range(k):
                    if tmp[l] != y[l]:
                        less = tmp[l] < y[l]
                        break
                if not less:
                    return False
    return True


@njit(cache=True, nogil=True)
def simplex_lune(d, y, out):
    n = d.shape[0]
    r = _diam(d, y)
    m = 0
    for x in range(n):
        if _in_lune(d, y, r, x):
            out[m] = x
            m += 1
    return m


@njit(cache=True, nogil=True)
def simplex_partner(d, y):
    r = _diam(d, y)
    for x in range(d.shape[0]):
        if _in_lune(d, y, r, x):
            return x
    return -1


@njit(cache=True, nogil=True)
def simplex_representatives(d, y):
    """Minimum vertex of each lune-graph component, in increasing order."""
    n = d.shape[0]
    r = _diam(d, y)
    pending = np.empty(n, dtype=np.int64)
    stack = np.empty(n, dtype=np.int64)
    reps = np.empty(n, dtype=np.int64)
    tmp = np.empty(len(y), dtype=np.int64)
    npend = simplex_lune(d, y, pending)
    ncomp = 0
    while npend > 0:
        root = pending[0]
        reps[ncomp] = root
        ncomp += 1
        for i in range(npend - 1):
            pending[i] = pending[i + 1]
        npend -= 1
        top = 0
        stack[top] = root
        top += 1
        while top > 0 and npend > 0:
            top -= 1
            u = stack[top]
            k = 0
            for i in range(npend):
                v = pending[i]
                if _joined(d, y, r, min(u, v), max(u, v), tmp):
                    stack[top] = v
                    top += 1
                else:
                    pending[k] = v
                    k += 1
            npend = k
    return reps[:ncomp].copy()
