"""Distance ingestion, simplices, diameters and the simplex-wise total order.

Simplices are plain tuples of strictly increasing vertex indices. Vertex
labels are input row order (0-based), which fixes the lexicographic tier of
the order without any configuration.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import logging
import math
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from scipy.spatial.distance import pdist, squareform

logger = logging.getLogger(__name__)

Simplex = tuple[int, ...]

FORMATS = ("points-csv", "dist-csv", "dist-lower")

SYMMETRY_RTOL = 1e-9


class InputError(ValueError):
    """Raised when an input file or array cannot be turned into distances."""


class Order(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class FiltrationKey(NamedTuple):
    """Sort key realising the (diameter, dimension, lexicographic) order."""

    diameter: float
    dimension: int
    vertices: Simplex


class DistanceMatrix:
    """Dense symmetric matrix of pairwise distances.

    The triangle inequality is not required. The underlying array is made
    read-only so instances can be shared freely between worker threads.
    """

    __slots__ = ("d",)

    def __init__(self, d, *, check: bool = True):
        arr = np.array(d, dtype=np.float64, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InputError(f"distance matrix must be square, got shape {arr.shape}")
        if arr.shape[0] == 0:
            raise InputError("distance matrix is empty")
        if check:
            arr = _validated(arr)
        arr.setflags(write=False)
        self.d = arr

    @property
    def n(self) -> int:
        return self.d.shape[0]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"DistanceMatrix(n={self.n})"

    @classmethod
    def from_points(cls, points) -> "DistanceMatrix":
        """Euclidean distances between the rows of ``points``."""
        pts = np.asarray(points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
            raise InputError(f"points must be a non-empty 2-D array, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise InputError("points contain non-finite coordinates")
        return cls(squareform(pdist(pts)), check=False)


def _validated(arr: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(arr)):
        raise InputError("distance matrix contains non-finite entries")
    if np.any(arr < 0):
        raise InputError("distance matrix contains negative distances")
    if np.any(np.diag(arr) != 0):
        raise InputError("distance matrix has a non-zero diagonal")
    if not np.array_equal(arr, arr.T):
        scale = np.maximum(np.abs(arr), np.abs(arr.T))
        gap = np.abs(arr - arr.T)
        bad = gap > SYMMETRY_RTOL * np.where(scale > 0, scale, 1.0)
        if np.any(bad):
            i, j = np.argwhere(bad)[0]
            logger.warning(
                "distance matrix is asymmetric beyond rtol=%g (e.g. d[%d][%d]=%r vs %r); "
                "symmetrising by averaging", SYMMETRY_RTOL, i, j, arr[i, j], arr[j, i])
        arr = (arr + arr.T) / 2.0
    return arr


def _read_rows(path: Path) -> list[list[float]]:
    rows = []
    with open(path, newline="") as fh:
        for lineno, raw in enumerate(csv.reader(fh), start=1):
            cells = [c.strip() for c in raw]
            if not cells or all(c == "" for c in cells):
                continue
            try:
                rows.append([float(c) for c in cells])
            except ValueError:
                raise InputError(f"{path}:{lineno}: non-numeric cell in {raw!r}") from None
    return rows


def read_points(path) -> np.ndarray:
    """Coordinates from a headerless points-csv file, one point per line."""
    rows = _read_rows(Path(path))
    if not rows:
        raise InputError(f"{path}: no points")
    width = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != width:
            raise InputError(f"{path}: ragged rows (row {i} has {len(r)} cells, expected {width})")
    return np.asarray(rows, dtype=np.float64)


def load_points(path, format: str = "points-csv") -> DistanceMatrix:
    """Read a distance matrix from ``path`` in one of :data:`FORMATS`."""
    path = Path(path)
    if format not in FORMATS:
        raise InputError(f"unknown input format {format!r}; expected one of {FORMATS}")
    if format == "points-csv":
        return DistanceMatrix.from_points(read_points(path))
    rows = _read_rows(path)
    if format == "dist-csv":
        n = len(rows)
        if n == 0:
            raise InputError(f"{path}: empty matrix")
        for i, r in enumerate(rows):
            if len(r) != n:
                raise InputError(f"{path}: ragged rows (row {i} has {len(r)} cells, expected {n})")
        return DistanceMatrix(rows)
    # dist-lower: row i (from the second point on) carries i entries
    n = len(rows) + 1
    d = np.zeros((n, n))
    for i, r in enumerate(rows, start=1):
        if len(r) != i:
            raise InputError(f"{path}: ragged rows (lower-triangle row {i} has {len(r)} cells, expected {i})")
        d[i, :i] = r
    d = d + d.T
    return DistanceMatrix(d)


def save_points(path, points) -> None:
    pts = np.asarray(points, dtype=np.float64)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in pts:
            writer.writerow([repr(float(x)) for x in row])


def make_simplex(vertices: Iterable[int]) -> Simplex:
    """Sort ``vertices`` into a simplex; duplicates are rejected."""
    s = tuple(sorted(int(v) for v in vertices))
    if not s:
        raise ValueError("a simplex needs at least one vertex")
    if any(a == b for a, b in zip(s, s[1:])):
        raise ValueError(f"repeated vertex in {s}")
    return s


def _check_range(sigma: Sequence[int], n: int) -> None:
    for v in sigma:
        if not 0 <= v < n:
            raise IndexError(f"vertex {v} out of range for {n} points")


def diameter(sigma: Sequence[int], D: DistanceMatrix) -> float:
    """Largest pairwise distance among the vertices of ``sigma``."""
    _check_range(sigma, D.n)
    if len(sigma) < 2:
        return 0.0
    idx = np.asarray(sigma)
    return float(D.d[np.ix_(idx, idx)].max())


def filtration_key(sigma: Sequence[int], D: DistanceMatrix) -> FiltrationKey:
    s = tuple(sorted(sigma))
    return FiltrationKey(diameter(s, D), len(s) - 1, s)


def compare(sigma: Sequence[int], tau: Sequence[int], D: DistanceMatrix) -> Order:
    ks, kt = filtration_key(sigma, D), filtration_key(tau, D)
    if ks < kt:
        return Order.LESS
    if ks > kt:
        return Order.GREATER
    return Order.EQUAL


def faces(sigma: Simplex, dim: int | None = None) -> list[Simplex]:
    """Codimension-one faces of ``sigma`` (``dim`` selects another face dimension)."""
    k = len(sigma) - 1 if dim is None else dim + 1
    if k <= 0:
        return []
    return list(combinations(sigma, k))


def insert_vertex(sigma: Simplex, x: int) -> Simplex:
    """``sigma`` with vertex ``x`` added, kept sorted."""
    return tuple(sorted((*sigma, x)))


@dataclass(frozen=True)
class Barcode:
    """Multiset of (degree, birth, death) intervals with death > birth."""

    intervals: tuple[tuple[int, float, float], ...]

    def __init__(self, intervals: Iterable[Sequence[float]] = ()):
        rows = []
        for dim, b, d in intervals:
            if not d > b:
                raise ValueError(f"interval [{b}, {d}) is empty")
            rows.append((int(dim), float(b), float(d)))
        object.__setattr__(self, "intervals", tuple(sorted(rows)))

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def degree(self, k: int) -> list[tuple[float, float]]:
        return [(b, d) for dim, b, d in self.intervals if dim == k]

    def __or__(self, other: "Barcode") -> "Barcode":
        return Barcode(self.intervals + other.intervals)

    def to_array(self) -> np.ndarray:
        return np.array(self.intervals, dtype=float).reshape(-1, 3)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("dimension,birth,death\n")
        for dim, b, d in self.intervals:
            buf.write(f"{dim},{_fmt(b)},{_fmt(d)}\n")
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {"intervals": [{"dimension": dim, "birth": b, "death": _fmt(d) if math.isinf(d) else d}
                           for dim, b, d in self.intervals]},
            indent=2)


def _fmt(x: float) -> str:
    return "inf" if math.isinf(x) else repr(float(x))
