"""Lunes of simplices, their connected components and lune representatives.

These routines work for simplices of any dimension q >= 1 and are written
against numpy; the edge-only hot loop used when distilling lives in
:mod:`distilled_rips._kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .core import DistanceMatrix, Simplex, diameter


@dataclass(frozen=True)
class LuneResult:
    simplex: Simplex
    members: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def earliest(self) -> int | None:
        """Earliest lune vertex overall, the matching partner's apex."""
        return self.representatives[0] if self.representatives else None


def _as_simplex(sigma: Sequence[int], D: DistanceMatrix) -> np.ndarray:
    y = np.asarray(sorted(sigma), dtype=np.intp)
    if len(y) < 2:
        raise ValueError(f"lunes are defined for simplices of dimension >= 1, got {tuple(sigma)}")
    if y[0] < 0 or y[-1] >= D.n:
        raise IndexError(f"simplex {tuple(sigma)} out of range for {D.n} points")
    return y


def compute_lune(sigma: Sequence[int], D: DistanceMatrix) -> np.ndarray:
    """Vertices x such that swapping x in for any vertex of ``sigma`` gives an earlier simplex.

    Swapping x for the i-th vertex keeps the dimension, so the comparison is
    decided by diameter and, on a tie, lexicographically; the re-sorted
    tuple precedes ``sigma`` exactly when x is smaller than the vertex it
    replaced. Returns the members in increasing order.
    """
    y = _as_simplex(sigma, D)
    d = D.d
    n = D.n
    diam = diameter(tuple(y), D)
    xs = np.arange(n)
    ok = np.ones(n, dtype=bool)
    ok[y] = False
    for i in range(len(y)):
        rest = np.delete(y, i)
        base = d[np.ix_(rest, rest)].max() if len(rest) > 1 else 0.0
        sub = np.maximum(d[:, rest].max(axis=1), base)
        ok &= (sub < diam) | ((sub == diam) & (xs < y[i]))
    return np.flatnonzero(ok)


def _lex_less(verts: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Row-wise ``verts <_lex y`` for sorted vertex rows of equal length."""
    diff = verts != y
    first = np.argmax(diff, axis=-1)
    at = np.take_along_axis(verts, first[..., None], axis=-1)[..., 0]
    return diff.any(axis=-1) & (at < y[first])


def lune_adjacency(sigma: Sequence[int], members: Sequence[int], D: DistanceMatrix) -> np.ndarray:
    """Boolean matrix of the lune graph on ``members``.

    p and q are joined when, for every way of deleting two vertices of
    ``sigma``, the simplex spanned by p, q and the remaining vertices
    precedes ``sigma``.
    """
    y = _as_simplex(sigma, D)
    m = np.asarray(members, dtype=np.intp)
    d = D.d
    diam = diameter(tuple(y), D)
    k = len(m)
    adj = np.ones((k, k), dtype=bool)
    P = np.broadcast_to(m[:, None], (k, k))
    Q = np.broadcast_to(m[None, :], (k, k))
    dpq = d[np.ix_(m, m)]
    for i, j in combinations(range(len(y)), 2):
        rest = np.delete(y, [i, j])
        sub = dpq
        if len(rest):
            to_rest = d[np.ix_(m, rest)].max(axis=1)
            sub = np.maximum(sub, np.maximum(to_rest[:, None], to_rest[None, :]))
            if len(rest) > 1:
                sub = np.maximum(sub, d[np.ix_(rest, rest)].max())
        verts = np.concatenate(
            [P[..., None], Q[..., None], np.broadcast_to(rest, (k, k, len(rest)))], axis=-1)
        verts = np.sort(verts, axis=-1)
        adj &= (sub < diam) | ((sub == diam) & _lex_less(verts, y))
    np.fill_diagonal(adj, False)
    return adj


def lune_components(sigma: Sequence[int], members: Sequence[int], D: DistanceMatrix) -> list[tuple[int, ...]]:
    """Partition ``members`` into lune-graph components, ordered by their smallest vertex."""
    members = [int(v) for v in members]
    lune = compute_lune(sigma, D)
    if sorted(members) != lune.tolist():
        raise ValueError(f"members {members} are not the lune of {tuple(sigma)}")
    return _components(sigma, lune, D)


def _components(sigma, lune: np.ndarray, D: DistanceMatrix) -> list[tuple[int, ...]]:
    if not len(lune):
        return []
    adj = lune_adjacency(sigma, lune, D)
    _, labels = connected_components(csr_matrix(adj), directed=False)
    blocks: dict[int, list[int]] = {}
    for v, lab in zip(lune.tolist(), labels.tolist()):
        blocks.setdefault(lab, []).append(v)
    return sorted((tuple(b) for b in blocks.values()), key=lambda b: b[0])


def lune_representatives(sigma: Sequence[int], D: DistanceMatrix) -> LuneResult:
    """Lune, components and the earliest vertex of each component."""
    s = tuple(int(v) for v in sorted(sigma))
    lune = compute_lune(s, D)
    comps = _components(s, lune, D)
    return LuneResult(
        simplex=s,
        members=tuple(lune.tolist()),
        components=tuple(comps),
        representatives=tuple(c[0] for c in comps),
    )
