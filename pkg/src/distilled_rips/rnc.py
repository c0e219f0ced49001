"""Relative neighborhood complexes and their clipped versions, plus mesh export."""

from __future__ import annotations

import logging
from itertools import combinations
from pathlib import Path
from typing import Sequence

import numpy as np

from . import _kernels
from .core import DistanceMatrix, Simplex
from .distill import DistilledComplex, _map, _row_chunks, _split, build_dvr, resolve_workers

logger = logging.getLogger(__name__)

RNC2_CAP = 2000


class ResourceCapExceeded(RuntimeError):
    pass


def _empty_lune(sigma: Simplex, D: DistanceMatrix) -> bool:
    return _kernels.simplex_partner(D.d, np.asarray(sigma, dtype=np.int64)) < 0


def rnc(D: DistanceMatrix, q: int = 1, workers: int | None = None, cap: int = RNC2_CAP) -> list[Simplex]:
    """All q-simplices with an empty lune, in lexicographic order.

    For q = 1 this is the relative neighborhood graph. The q = 2 complex
    costs a lune test per triangle and refuses inputs above ``cap`` points.
    """
    if q not in (1, 2):
        raise ValueError(f"q must be 1 or 2, got {q}")
    workers = resolve_workers(workers)
    n = D.n
    if q == 1:
        mask = np.zeros((n, n), dtype=np.bool_)
        _map(lambda c: _kernels.empty_lune_rows(D.d, c[0], c[1], mask), _row_chunks(n, workers), workers)
        return [(int(a), int(b)) for a, b in zip(*np.nonzero(mask))]
    if n > cap:
        raise ResourceCapExceeded(f"RNC_2 enumeration refuses n={n} > cap={cap}")
    tris = list(combinations(range(n), 3))
    parts = _map(lambda batch: [t for t in batch if _empty_lune(t, D)], _split(tris, workers), workers)
    return [t for part in parts for t in part]


def crnc(D: DistanceMatrix, q: int = 1, workers: int | None = None,
         complex: DistilledComplex | None = None) -> list[Simplex]:
    """Critical q-simplices (empty lune) that lie in the degree-q distilled complex."""
    if q not in (1, 2):
        raise ValueError(f"q must be 1 or 2, got {q}")
    cx = complex if complex is not None else build_dvr(D, q, workers=workers)
    if cx.degree != q:
        raise ValueError(f"complex has degree {cx.degree}, expected {q}")
    return sorted(s for s in cx.simplices if len(s) == q + 1 and _empty_lune(s, D))


def spectral_layout(D: DistanceMatrix, dim: int = 2) -> np.ndarray:
    """Classical multidimensional scaling of ``D`` into ``dim`` coordinates."""
    n = D.n
    sq = D.d ** 2
    J = np.eye(n) - 1.0 / n
    B = -0.5 * J @ sq @ J
    vals, vecs = np.linalg.eigh(B)
    order = np.argsort(vals)[::-1][:dim]
    coords = vecs[:, order] * np.sqrt(np.clip(vals[order], 0, None))
    # fix the eigenvector sign so output is reproducible
    for k in range(coords.shape[1]):
        col = coords[:, k]
        if col[np.argmax(np.abs(col))] < 0:
            coords[:, k] = -col
    if coords.shape[1] < dim:
        coords = np.hstack([coords, np.zeros((n, dim - coords.shape[1]))])
    return coords


def _vertex_coords(points, D: DistanceMatrix | None, q: int) -> np.ndarray:
    if points is not None:
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.shape[1] <= 3:
            if q == 2 and pts.shape[1] < 3:
                logger.warning("exporting triangles with %d-D coordinates; padding with zeros", pts.shape[1])
            return np.hstack([pts, np.zeros((len(pts), 3 - pts.shape[1]))])
    if D is None:
        raise ValueError("need points or a distance matrix to place vertices")
    if q == 2:
        logger.warning("no 3-D coordinates for a triangle export; using a 2-D spectral layout")
    return np.hstack([spectral_layout(D, 2), np.zeros((D.n, 1))])


def export_skeleton(elements: Sequence[Simplex], path, points=None, D: DistanceMatrix | None = None,
                    q: int | None = None) -> Path:
    """Write ``elements`` as an OBJ file: ``l`` lines for edges, ``f`` faces for triangles."""
    path = Path(path)
    elements = sorted({tuple(e) for e in elements})
    if q is None:
        q = len(elements[0]) - 1 if elements else 1
    if any(len(e) != q + 1 for e in elements):
        raise ValueError(f"all elements must be {q}-simplices")
    coords = _vertex_coords(points, D, q)
    n = len(coords)
    if any(v < 0 or v >= n for e in elements for v in e):
        raise ValueError("element references a vertex out of range")
    tag = "l" if q == 1 else "f"
    with open(path, "w") as fh:
        for x, y, z in coords.tolist():
            fh.write(f"v {x!r} {y!r} {z!r}\n")
        for e in elements:
            fh.write(tag + " " + " ".join(str(v + 1) for v in e) + "\n")
    return path


def export_csv(elements: Sequence[Simplex], path) -> Path:
    path = Path(path)
    with open(path, "w") as fh:
        for e in sorted({tuple(e) for e in elements}):
            fh.write(",".join(str(v) for v in (len(e) - 1, *e)) + "\n")
    return path
