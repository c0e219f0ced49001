"""Brute-force reference computations on the full Vietoris-Rips complex.

Nothing here touches lunes, the matching or the distilled complex; the
full 2-skeleton is enumerated and reduced with a textbook dense-bitset
column reduction. Use it only on small inputs.
"""

from __future__ import annotations

from itertools import combinations

from .core import Barcode, DistanceMatrix

DEFAULT_CAP = 40


class OracleCapExceeded(RuntimeError):
    pass


class FullComplex:
    """All vertices, edges and triangles of the Vietoris-Rips complex, in filtration order."""

    def __init__(self, D: DistanceMatrix, cap: int = DEFAULT_CAP):
        if D.n > cap:
            raise OracleCapExceeded(f"oracle refuses n={D.n} > cap={cap}")
        d = D.d.tolist()
        n = D.n
        cells = [(0.0, 0, (v,)) for v in range(n)]
        for a, b in combinations(range(n), 2):
            cells.append((d[a][b], 1, (a, b)))
        for a, b, c in combinations(range(n), 3):
            cells.append((max(d[a][b], d[a][c], d[b][c]), 2, (a, b, c)))
        cells.sort()
        self.cells = cells
        self.position = {c[2]: i for i, c in enumerate(cells)}


def _reduce_bits(full: FullComplex):
    """Yield (birth position, death position) pairs for the triangle columns."""
    pivots: dict[int, int] = {}
    columns: dict[int, int] = {}
    pos = full.position
    for j, (_, dim, s) in enumerate(full.cells):
        if dim != 2:
            continue
        a, b, c = s
        col = (1 << pos[(a, b)]) | (1 << pos[(a, c)]) | (1 << pos[(b, c)])
        while col:
            low = col.bit_length() - 1
            if low not in pivots:
                pivots[low] = j
                columns[j] = col
                yield low, j
                break
            col ^= columns[pivots[low]]


def full_vr_barcode(D: DistanceMatrix, degree: int = 1, cap: int = DEFAULT_CAP) -> Barcode:
    """Degree-1 barcode of the full Vietoris-Rips filtration."""
    if degree != 1:
        raise ValueError("the oracle only computes degree-1 barcodes")
    full = FullComplex(D, cap)
    out = []
    for i, j in _reduce_bits(full):
        birth, death = full.cells[i][0], full.cells[j][0]
        if death > birth:
            out.append((1, birth, death))
    return Barcode(out)


def brute_apparent_pairs(D: DistanceMatrix, cap: int = DEFAULT_CAP) -> set[tuple[tuple, tuple]]:
    """(edge, triangle) pairs where each is the other's earliest coface / latest facet."""
    full = FullComplex(D, cap)
    pos = full.position
    n = D.n
    out = set()
    for a, b in combinations(range(n), 2):
        cof = [tuple(sorted((a, b, x))) for x in range(n) if x != a and x != b]
        if not cof:
            continue
        tri = min(cof, key=pos.__getitem__)
        latest = max(combinations(tri, 2), key=pos.__getitem__)
        if latest == (a, b):
            out.add(((a, b), tri))
    return out
