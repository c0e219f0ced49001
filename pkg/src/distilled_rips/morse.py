"""The lune matching, Morse-graph adjacency and reach.

A q-simplex with a non-empty lune is matched upward to the coface obtained
by adding its earliest lune vertex; these are apparent pairs, so the
matching is acyclic and preserves diameters. The Morse graph is walked on
(q+1)-simplices: from tau we step to the partner of every matched facet of
tau other than tau itself.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .core import DistanceMatrix, FiltrationKey, Simplex, diameter, insert_vertex
from .lune import compute_lune, lune_representatives


@dataclass(frozen=True)
class MatchClass:
    kind: str  # "up", "down" or "critical"
    partner: Simplex | None = None

    @classmethod
    def critical(cls) -> "MatchClass":
        return cls("critical")

    @property
    def is_critical(self) -> bool:
        return self.kind == "critical"


class MatchCache:
    """Memo of matching partners keyed by simplex.

    Plain dict operations are atomic under the GIL and every writer stores
    the same value for a key, so concurrent use needs no lock.
    """

    def __init__(self):
        self._up: dict[Simplex, Simplex | None] = {}

    def get(self, sigma: Simplex, default=None):
        return self._up.get(sigma, default)

    def put(self, sigma: Simplex, partner: Simplex | None) -> None:
        self._up[sigma] = partner

    def __contains__(self, sigma) -> bool:
        return sigma in self._up

    def __len__(self) -> int:
        return len(self._up)


_MISSING = object()


class Matching:
    """The lune matching on a distance matrix.

    Parameters
    ----------
    D : DistanceMatrix
    cache : bool
        Memoise partners in a :class:`MatchCache`. Off recomputes lunes on
        every query (low-memory mode).
    edge_partners : ndarray, optional
        Dense table ``t[a, b]`` (a < b) of edge partner apexes, -1 for
        none, as produced by the edge scan. Used in place of lune queries
        for edges when given.
    """

    def __init__(self, D: DistanceMatrix, cache: bool = True, edge_partners: np.ndarray | None = None,
                 use_kernels: bool = True):
        self.D = D
        self.cache = MatchCache() if cache else None
        self.edge_partners = edge_partners
        self.use_kernels = use_kernels

    def _apex(self, sigma: Simplex) -> int | None:
        if self.use_kernels:
            if len(sigma) == 2 and self.edge_partners is not None:
                x = int(self.edge_partners[sigma])
            elif len(sigma) == 2:
                x = int(_kernels.edge_partner(self.D.d, *sigma))
            else:
                x = int(_kernels.simplex_partner(self.D.d, np.asarray(sigma, dtype=np.int64)))
            return x if x >= 0 else None
        lune = compute_lune(sigma, self.D)
        return int(lune[0]) if len(lune) else None

    def partner_up(self, sigma: Sequence[int]) -> Simplex | None:
        s = tuple(sigma)
        if len(s) < 2:
            return None
        if self.cache is not None:
            hit = self.cache.get(s, _MISSING)
            if hit is not _MISSING:
                return hit
        x = self._apex(s)
        tau = None if x is None else insert_vertex(s, x)
        if self.cache is not None:
            self.cache.put(s, tau)
        return tau

    def partner_down(self, tau: Sequence[int]) -> Simplex | None:
        t = tuple(tau)
        if len(t) < 3:
            return None
        for i in range(len(t)):
            f = t[:i] + t[i + 1:]
            if self.partner_up(f) == t:
                return f
        return None

    def classify(self, sigma: Sequence[int], q: int) -> MatchClass:
        """Class of ``sigma`` under the matching between q- and (q+1)-simplices."""
        s = tuple(sigma)
        dim = len(s) - 1
        if dim == q:
            tau = self.partner_up(s)
            return MatchClass("up", tau) if tau is not None else MatchClass.critical()
        if dim == q + 1:
            f = self.partner_down(s)
            return MatchClass("down", f) if f is not None else MatchClass.critical()
        raise ValueError(f"simplex {s} has dimension {dim}; expected {q} or {q + 1}")

    def in_reduced_complex(self, tau: Sequence[int]) -> bool:
        """Whether ``tau`` is a top simplex of the reduced complex.

        Such a simplex adds a lune representative to one of its facets. A
        lune vertex always adds to the latest facet, so only that facet
        needs checking.
        """
        t = tuple(tau)
        facets = [t[:i] + t[i + 1:] for i in range(len(t))]
        latest = max(facets, key=lambda f: self.key(f))
        (x,) = set(t) - set(latest)
        return x in lune_representatives(latest, self.D).representatives

    def key(self, sigma: Simplex) -> FiltrationKey:
        return FiltrationKey(diameter(sigma, self.D), len(sigma) - 1, sigma)

    def neighbors(self, tau: Sequence[int]) -> list[Simplex]:
        t = tuple(tau)
        out = set()
        for i in range(len(t)):
            up = self.partner_up(t[:i] + t[i + 1:])
            if up is not None and up != t:
                out.add(up)
        return sorted(out, key=self.key)

    def reach(self, tau: Sequence[int]) -> set[Simplex]:
        return self.reach_many([tuple(tau)])

    def reach_many(self, seeds: Iterable[Simplex], seen: set[Simplex] | None = None) -> set[Simplex]:
        """Union of reach over ``seeds``; ``seen`` is extended in place when given."""
        seen = set() if seen is None else seen
        queue = deque()
        for s in seeds:
            if s not in seen:
                seen.add(s)
                queue.append(s)
        while queue:
            t = queue.popleft()
            for nb in self.neighbors(t):
                if nb not in seen:
                    seen.add(nb)
                    queue.append(nb)
        return seen


def match_partner_up(sigma: Sequence[int], D: DistanceMatrix, matching: Matching | None = None) -> Simplex | None:
    return (matching or Matching(D, cache=False)).partner_up(tuple(sigma))


def match_partner_down(tau: Sequence[int], D: DistanceMatrix, matching: Matching | None = None) -> Simplex | None:
    return (matching or Matching(D, cache=False)).partner_down(tuple(tau))


def morse_neighbors(tau: Sequence[int], D: DistanceMatrix, matching: Matching | None = None) -> list[Simplex]:
    return (matching or Matching(D)).neighbors(tuple(tau))


def reach(tau: Sequence[int], D: DistanceMatrix, matching: Matching | None = None) -> set[Simplex]:
    """(q+1)-simplices reachable from ``tau`` in the Morse graph, ``tau`` included."""
    return (matching or Matching(D)).reach(tuple(tau))


def verify_acyclic(simplices: Iterable[Sequence[int]], D: DistanceMatrix, matching: Matching | None = None) -> bool:
    """True when the Morse graph restricted to ``simplices`` has no directed cycle."""
    m = matching or Matching(D)
    nodes = [tuple(s) for s in simplices]
    node_set = set(nodes)
    adj = {t: [u for u in m.neighbors(t) if u in node_set] for t in nodes}
    WHITE, GREY, BLACK = 0, 1, 2
    color = dict.fromkeys(nodes, WHITE)
    for start in nodes:
        if color[start] != WHITE:
            continue
        color[start] = GREY
        stack = [(start, iter(adj[start]))]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = BLACK
                stack.pop()
            elif color[nxt] == GREY:
                return False
            elif color[nxt] == WHITE:
                color[nxt] = GREY
                stack.append((nxt, iter(adj[nxt])))
    return True
