"""scikit-learn style estimators around the distilled pipeline."""

from __future__ import annotations

import numbers

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .core import DistanceMatrix
from .distill import build_dvr, dvr_stats
from .persistence import Barcode, build_filtration, extract_barcode, ph0, reduce

METRICS = ("euclidean", "precomputed")


def check_point_cloud(X, metric: str = "euclidean") -> DistanceMatrix:
    """Validate one point cloud (or distance matrix) and return its distances."""
    if isinstance(X, DistanceMatrix):
        if metric != "precomputed":
            raise ValueError("got a DistanceMatrix but metric is not 'precomputed'")
        return X
    if metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}, got {metric!r}")
    arr = check_array(X, dtype=np.float64, ensure_2d=True, ensure_all_finite=True)
    if metric == "precomputed":
        return DistanceMatrix(arr)
    return DistanceMatrix.from_points(arr)


def check_collection(X, metric: str = "euclidean") -> list[DistanceMatrix]:
    if isinstance(X, np.ndarray) and X.ndim == 2:
        raise ValueError("expected a collection of point clouds; wrap a single cloud in a list")
    return [check_point_cloud(x, metric) for x in X]


def _check_params(est) -> None:
    if est.metric not in METRICS:
        raise ValueError(f"metric must be one of {METRICS}, got {est.metric!r}")
    if est.workers is not None and (not isinstance(est.workers, numbers.Integral) or est.workers < 1):
        raise ValueError(f"workers must be a positive integer or None, got {est.workers!r}")
    dims = tuple(est.homology_dimensions)
    if not dims or any(k not in (0, 1) for k in dims):
        raise ValueError(f"homology_dimensions must be drawn from (0, 1), got {dims!r}")


class DistilledVietorisRips(BaseEstimator):
    """Persistence of a single point cloud through the distilled complex.

    Parameters
    ----------
    metric : {"euclidean", "precomputed"}
        How to read ``X`` in :meth:`fit`: as points (one per row) or as a
        square distance matrix.
    homology_dimensions : tuple of int
        Degrees to report; 1 is computed from the distilled complex, 0 by
        a spanning-tree sweep.
    workers : int, optional
        Threads for the distilling loop; None uses every core. The output
        does not depend on it.
    low_memory : bool
        Do not keep the matching in memory.
    clearing : bool
        Use the clearing optimisation during reduction.

    Attributes
    ----------
    distances_ : DistanceMatrix
    complex_ : DistilledComplex
    pairs_ : list of PersistencePair
    barcode_ : Barcode
    stats_ : DistillStats
    """

    def __init__(self, metric="euclidean", homology_dimensions=(1,), workers=None,
                 low_memory=False, clearing=True):
        self.metric = metric
        self.homology_dimensions = homology_dimensions
        self.workers = workers
        self.low_memory = low_memory
        self.clearing = clearing

    def fit(self, X, y=None):
        _check_params(self)
        D = check_point_cloud(X, self.metric)
        cx = build_dvr(D, 1, workers=self.workers, low_memory=self.low_memory)
        self.pairs_ = reduce(build_filtration(cx.simplices), clearing=self.clearing)
        bars = Barcode()
        if 1 in self.homology_dimensions:
            bars = bars | extract_barcode(self.pairs_, 1)
        if 0 in self.homology_dimensions:
            bars = bars | ph0(D)
        self.distances_ = D
        self.complex_ = cx
        self.barcode_ = bars
        self.stats_ = dvr_stats(cx)
        self.n_points_ = D.n
        return self

    def fit_transform(self, X, y=None) -> np.ndarray:
        """Fit and return the barcode as an (k, 3) array of (degree, birth, death)."""
        return self.fit(X).barcode_.to_array()


class DistilledRipsPersistence(TransformerMixin, BaseEstimator):
    """Barcodes for a collection of point clouds.

    Stateless like most persistence transformers: :meth:`fit` only checks
    parameters, and :meth:`transform` maps each cloud in ``X`` to an
    (k, 3) array of (degree, birth, death) rows. Parameters are those of
    :class:`DistilledVietorisRips`.
    """

    def __init__(self, metric="euclidean", homology_dimensions=(1,), workers=None,
                 low_memory=False, clearing=True):
        self.metric = metric
        self.homology_dimensions = homology_dimensions
        self.workers = workers
        self.low_memory = low_memory
        self.clearing = clearing

    def fit(self, X, y=None):
        _check_params(self)
        check_collection(X, self.metric)
        self.homology_dimensions_ = tuple(sorted(set(self.homology_dimensions)))
        return self

    def transform(self, X) -> list[np.ndarray]:
        check_is_fitted(self, "homology_dimensions_")
        single = DistilledVietorisRips(**{**self.get_params(), "metric": "precomputed"})
        return [single.fit(D).barcode_.to_array()
                for D in check_collection(X, self.metric)]
