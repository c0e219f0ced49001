"""Build the distilled Vietoris-Rips complex.

Every q-simplex whose lune splits into several components contributes one
critical (q+1)-coface per non-earliest component representative. The top
simplices of the distilled complex are everything reachable from those
cofaces in the Morse graph; their faces and all vertices complete it.

The scan over q-simplices and the reach searches are split across worker
threads. Each worker fills a private buffer and the buffers are merged in
a fixed order, so the result does not depend on the worker count.
"""

from __future__ import annotations

import heapq
import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Sequence

import numpy as np

from . import _kernels
from .core import DistanceMatrix, FiltrationKey, Simplex, insert_vertex
from .lune import lune_representatives
from .morse import Matching

logger = logging.getLogger(__name__)


@dataclass
class DistilledComplex:
    degree: int
    n_points: int
    top_simplices: list[Simplex]
    simplices: dict[Simplex, float]
    n_multi_lune: int = 0
    phase_ms: dict[str, float] = field(default_factory=dict)

    def __contains__(self, sigma) -> bool:
        return tuple(sigma) in self.simplices

    def __len__(self) -> int:
        return len(self.simplices)

    def of_dim(self, k: int) -> list[Simplex]:
        return sorted((s for s in self.simplices if len(s) == k + 1), key=self.key)

    def key(self, sigma: Simplex) -> FiltrationKey:
        return FiltrationKey(self.simplices[sigma], len(sigma) - 1, sigma)

    def sorted_simplices(self) -> list[Simplex]:
        return sorted(self.simplices, key=self.key)

    @property
    def n_faces(self) -> int:
        return sum(1 for s in self.simplices if len(s) <= self.degree + 1)


@dataclass
class DistillStats:
    n_points: int
    n_edges_total: int
    b_x: int
    n_top: int
    n_faces: int
    phase_ms: dict[str, float] = field(default_factory=dict)

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "n_points": self.n_points,
            "n_edges_total": self.n_edges_total,
            "b_x": self.b_x,
            "n_top": self.n_top,
            "n_faces": self.n_faces,
        }
        if timing:
            out["phase_ms"] = {k: round(v, 3) for k, v in self.phase_ms.items()}
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2)


def resolve_workers(workers: int | None) -> int:
    if workers is None:
        return os.cpu_count() or 1
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    return int(workers)


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    if workers == 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _row_chunks(n: int, parts: int) -> list[tuple[int, int]]:
    """Split rows 0..n-1 into contiguous ranges holding similar numbers of edges."""
    weights = np.arange(n - 1, -1, -1, dtype=np.int64)
    total = int(weights.sum())
    if total == 0 or parts <= 1:
        return [(0, n)]
    cum = np.cumsum(weights)
    cuts = [0]
    for k in range(1, parts):
        cut = int(np.searchsorted(cum, total * k / parts)) + 1
        if cut > cuts[-1] and cut < n:
            cuts.append(cut)
    cuts.append(n)
    return list(zip(cuts[:-1], cuts[1:]))


def _split(items: list, parts: int) -> list[list]:
    size = -(-len(items) // parts) if items else 0
    return [items[i:i + size] for i in range(0, len(items), size)] if size else []


def _merge_unique(runs: Iterable[list], key) -> list:
    out = []
    last = None
    for s in heapq.merge(*runs, key=key):
        if s != last:
            out.append(s)
            last = s
    return out


def critical_cofaces(e: Sequence[int], D: DistanceMatrix) -> list[Simplex]:
    """Critical (q+1)-cofaces of ``e`` from its non-earliest lune representatives."""
    res = lune_representatives(e, D)
    return [insert_vertex(res.simplex, x) for x in res.representatives[1:]]


def _edge_seeds(D: DistanceMatrix, workers: int, partners: np.ndarray | None) -> tuple[list[Simplex], int]:
    d = D.d
    store = partners is not None
    table = partners if store else np.empty((1, 1), dtype=np.int32)
    chunks = _row_chunks(D.n, workers)
    multi = _map(lambda c: _kernels.scan_rows(d, c[0], c[1], table, store), chunks, workers)
    seeds = []
    n_multi = 0
    for block in multi:
        for a, b in block.tolist():
            n_multi += 1
            reps = _kernels.edge_representatives(d, a, b)
            seeds.extend(insert_vertex((a, b), int(x)) for x in reps[1:])
    return seeds, n_multi


def _compiled_cofaces(s: Simplex, D: DistanceMatrix) -> list[Simplex]:
    reps = _kernels.simplex_representatives(D.d, np.asarray(s, dtype=np.int64))
    return [insert_vertex(s, int(x)) for x in reps[1:]]


def _generic_seeds(D: DistanceMatrix, q: int, workers: int, use_kernels: bool) -> tuple[list[Simplex], int]:
    simplices = list(combinations(range(D.n), q + 1))
    cofaces = _compiled_cofaces if use_kernels else critical_cofaces

    def work(batch):
        found, multi = [], 0
        for s in batch:
            cof = cofaces(s, D)
            if cof:
                multi += 1
                found.extend(cof)
        return found, multi

    parts = _map(work, _split(simplices, workers), workers)
    seeds = [s for found, _ in parts for s in found]
    return seeds, sum(m for _, m in parts)


def build_dvr(D: DistanceMatrix, q: int = 1, workers: int | None = None,
              low_memory: bool = False, use_kernels: bool = True) -> DistilledComplex:
    """Distilled complex of degree ``q`` (1 or 2).

    ``low_memory`` stops the matching from being stored and recomputes
    lunes on demand. ``use_kernels=False`` swaps the compiled lune code
    for the numpy version, which is slower and exists for cross-checking.
    """
    if q not in (1, 2):
        raise ValueError(f"degree must be 1 or 2, got {q}")
    workers = resolve_workers(workers)
    n = D.n
    phase: dict[str, float] = {}

    t0 = time.perf_counter()
    partners = None
    if q == 1 and use_kernels:
        if not low_memory:
            partners = np.full((n, n), -1, dtype=np.int32)
        seeds, n_multi = _edge_seeds(D, workers, partners)
    else:
        seeds, n_multi = _generic_seeds(D, q, workers, use_kernels)
    phase["scan"] = (time.perf_counter() - t0) * 1e3
    logger.debug("degree %d: %d multi-component lunes, %d seeds", q, n_multi, len(seeds))

    t0 = time.perf_counter()
    if partners is not None:
        matching = Matching(D, cache=False, edge_partners=partners)
    else:
        matching = Matching(D, cache=not low_memory, use_kernels=use_kernels)
    seeds = sorted(set(seeds), key=matching.key)

    def reach_all(batch):
        return sorted(matching.reach_many(batch), key=matching.key)

    runs = _map(reach_all, _split(seeds, workers), workers)
    tops = _merge_unique(runs, key=matching.key)
    phase["reach"] = (time.perf_counter() - t0) * 1e3

    t0 = time.perf_counter()
    simplices = _face_closure(tops, D, n)
    phase["faces"] = (time.perf_counter() - t0) * 1e3
    return DistilledComplex(q, n, tops, simplices, n_multi, phase)


def _face_closure(tops: list[Simplex], D: DistanceMatrix, n: int) -> dict[Simplex, float]:
    d = D.d
    out: dict[Simplex, float] = {(v,): 0.0 for v in range(n)}
    for t in tops:
        for k in range(2, len(t) + 1):
            for f in combinations(t, k):
                if f not in out:
                    idx = np.asarray(f)
                    out[f] = float(d[np.ix_(idx, idx)].max()) if k > 2 else float(d[f[0], f[1]])
    return out


def dvr_stats(cx: DistilledComplex) -> DistillStats:
    n = cx.n_points
    return DistillStats(
        n_points=n,
        n_edges_total=comb(n, cx.degree + 1),
        b_x=cx.n_multi_lune,
        n_top=len(cx.top_simplices),
        n_faces=cx.n_faces,
        phase_ms=dict(cx.phase_ms),
    )
