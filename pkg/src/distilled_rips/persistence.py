"""Simplex-wise filtrations, Z/2 column reduction and barcodes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .core import Barcode, DistanceMatrix, FiltrationKey, Simplex


class FiltrationError(ValueError):
    pass


@dataclass(frozen=True)
class SimplexwiseFiltration:
    simplices: tuple[Simplex, ...]
    diameters: tuple[float, ...]
    index: Mapping[Simplex, int]

    def __len__(self) -> int:
        return len(self.simplices)

    def boundary(self, j: int) -> list[int]:
        s = self.simplices[j]
        if len(s) < 2:
            return []
        return [self.index[s[:i] + s[i + 1:]] for i in range(len(s))]


def build_filtration(complex: Mapping[Simplex, float]) -> SimplexwiseFiltration:
    """Order ``complex`` (simplex -> diameter) by diameter, dimension, then vertices."""
    order = sorted(complex, key=lambda s: FiltrationKey(complex[s], len(s) - 1, s))
    index = {s: i for i, s in enumerate(order)}
    for i, s in enumerate(order):
        if len(s) < 2:
            continue
        for k in range(len(s)):
            f = s[:k] + s[k + 1:]
            j = index.get(f)
            if j is None:
                raise FiltrationError(f"face {f} of {s} is missing from the complex")
            if j >= i:
                raise FiltrationError(f"face {f} does not precede {s}; diameters are inconsistent")
    return SimplexwiseFiltration(tuple(order), tuple(complex[s] for s in order), index)


@dataclass(frozen=True)
class PersistencePair:
    degree: int
    birth_index: int
    death_index: int | None
    birth_diam: float
    death_diam: float

    @property
    def persistence(self) -> float:
        return self.death_diam - self.birth_diam


def reduce(filtration: SimplexwiseFiltration, clearing: bool = True) -> list[PersistencePair]:
    """Standard Z/2 reduction with lowest-one pairing.

    With ``clearing`` the columns are processed from the top dimension
    down, and a column whose simplex was already used as a pivot is zeroed
    without reduction. Unpaired births come back with ``death_index=None``
    and an infinite death.
    """
    F = filtration
    by_dim: dict[int, list[int]] = {}
    for j, s in enumerate(F.simplices):
        by_dim.setdefault(len(s) - 1, []).append(j)
    dims = sorted((k for k in by_dim if k >= 1), reverse=clearing)

    pivot_col: dict[int, int] = {}
    reduced: dict[int, set[int]] = {}
    cleared: set[int] = set()
    for k in dims:
        for j in by_dim[k]:
            if j in cleared:
                continue
            col = set(F.boundary(j))
            while col:
                low = max(col)
                other = pivot_col.get(low)
                if other is None:
                    break
                col ^= reduced[other]
            if col:
                low = max(col)
                pivot_col[low] = j
                reduced[j] = col
                if clearing:
                    cleared.add(low)

    pairs = []
    paired_births = set(pivot_col)
    for low, j in pivot_col.items():
        pairs.append(PersistencePair(len(F.simplices[low]) - 1, low, j, F.diameters[low], F.diameters[j]))
    deaths = set(pivot_col.values())
    for i, s in enumerate(F.simplices):
        if i in paired_births or i in deaths:
            continue
        pairs.append(PersistencePair(len(s) - 1, i, None, F.diameters[i], math.inf))
    pairs.sort(key=lambda p: (p.degree, p.birth_index))
    return pairs


def extract_barcode(pairs: Iterable[PersistencePair], degree: int) -> Barcode:
    return Barcode((p.degree, p.birth_diam, p.death_diam)
                   for p in pairs if p.degree == degree and p.death_diam > p.birth_diam)


def mst_edges(D: DistanceMatrix) -> list[Simplex]:
    """Edges that merge components when taken in filtration order (Kruskal)."""
    n = D.n
    iu, ju = np.triu_indices(n, 1)
    w = D.d[iu, ju]
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    out = []
    # diameter, then lexicographic (i, j); lexsort takes its keys last-first
    for e in np.lexsort((ju, iu, w)).tolist():
        a, b = int(iu[e]), int(ju[e])
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            out.append((a, b))
            if len(out) == n - 1:
                break
    return out


def ph0(D: DistanceMatrix) -> Barcode:
    """Degree-0 barcode: one finite bar per spanning-tree edge plus the essential class."""
    deaths = (float(D.d[a, b]) for a, b in mst_edges(D))
    return Barcode([(0, 0.0, math.inf)] + [(0, 0.0, w) for w in deaths if w > 0])


def barcode_from_complex(complex: Mapping[Simplex, float], degree: int = 1, clearing: bool = True) -> Barcode:
    return extract_barcode(reduce(build_filtration(complex), clearing=clearing), degree)
