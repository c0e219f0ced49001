import math
from itertools import combinations

import numpy as np
import pytest

from distilled_rips.core import Barcode, DistanceMatrix
from distilled_rips.distill import build_dvr
from distilled_rips.oracle import full_vr_barcode
from distilled_rips.persistence import (
    FiltrationError, barcode_from_complex, build_filtration, extract_barcode, mst_edges, ph0, reduce,
)
from oracles import random_instance, square4, tie_instance, triangle3

SQRT2 = 1.4142135623730951


def full_complex(D):
    cells = {(v,): 0.0 for v in range(D.n)}
    for k in (2, 3):
        for s in combinations(range(D.n), k):
            cells[s] = float(D.d[np.ix_(s, s)].max())
    return cells


def test_square_filtration_order():
    F = build_filtration(build_dvr(square4()).simplices)
    assert list(F.simplices) == [(0,), (1,), (2,), (3,), (0, 1), (0, 2), (1, 3), (2, 3),
                                 (0, 3), (0, 1, 3), (0, 2, 3)]


def test_triangle_and_point_filtration_order():
    assert list(build_filtration(full_complex(triangle3())).simplices) == [
        (0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]
    assert list(build_filtration({(0,): 0.0}).simplices) == [(0,)]


def test_filtration_rejects_missing_faces():
    with pytest.raises(FiltrationError):
        build_filtration({(0,): 0.0, (1,): 0.0, (0, 1, 2): 1.0})


def _degree1(pairs, F):
    return {(F.simplices[p.birth_index],
             None if p.death_index is None else F.simplices[p.death_index], p.birth_diam, p.death_diam)
            for p in pairs if p.degree == 1}


def test_square_pairs():
    F = build_filtration(build_dvr(square4()).simplices)
    assert _degree1(reduce(F), F) == {((0, 3), (0, 1, 3), SQRT2, SQRT2), ((2, 3), (0, 2, 3), 1.0, SQRT2)}


def test_triangle_pairs():
    F = build_filtration(full_complex(triangle3()))
    assert _degree1(reduce(F), F) == {((1, 2), (0, 1, 2), 1.0, 1.0)}


def test_vertices_only_have_no_higher_pairs():
    F = build_filtration({(v,): 0.0 for v in range(4)})
    assert all(p.degree == 0 and p.death_index is None for p in reduce(F))


def test_barcode_examples():
    assert barcode_from_complex(build_dvr(square4()).simplices) == Barcode([(1, 1.0, SQRT2)])
    assert barcode_from_complex(build_dvr(triangle3()).simplices) == Barcode()


def test_ph0_examples():
    assert ph0(triangle3()) == Barcode([(0, 0, 1), (0, 0, 1), (0, 0, math.inf)])
    assert ph0(DistanceMatrix([[0.0]])) == Barcode([(0, 0, math.inf)])
    assert ph0(DistanceMatrix([[0, 2], [2, 0]])) == Barcode([(0, 0, 2), (0, 0, math.inf)])


def test_ph0_drops_duplicate_points():
    D = DistanceMatrix.from_points([[0, 0], [0, 0], [3, 4]])
    assert ph0(D) == Barcode([(0, 0, 5), (0, 0, math.inf)])
    assert len(mst_edges(D)) == 2


def test_barcode_rejects_empty_interval_and_serialises():
    with pytest.raises(ValueError):
        Barcode([(1, 2.0, 2.0)])
    b = Barcode([(1, 1.0, SQRT2), (0, 0.0, math.inf)])
    assert b.to_csv() == "dimension,birth,death\n0,0.0,inf\n1,1.0,1.4142135623730951\n"
    assert b.to_array().shape == (2, 3)
    assert '"death": "inf"' in b.to_json()
    assert b.degree(1) == [(1.0, SQRT2)]


def _check_pairs(pairs, F):
    seen = set()
    for p in pairs:
        assert p.death_diam >= p.birth_diam
        assert p.birth_index not in seen
        seen.add(p.birth_index)
        if p.death_index is not None:
            assert len(F.simplices[p.death_index]) == len(F.simplices[p.birth_index]) + 1
            assert p.death_index > p.birth_index
            assert p.death_index not in seen
            seen.add(p.death_index)
    assert seen == set(range(len(F)))


@pytest.mark.parametrize("seed", range(100))
def test_distilled_barcode_equals_full_barcode(seed):
    _, D = random_instance(seed)
    cx = build_dvr(D)
    F = build_filtration(cx.simplices)
    pairs = reduce(F)
    _check_pairs(pairs, F)
    assert extract_barcode(pairs, 1) == full_vr_barcode(D)


@pytest.mark.parametrize("seed", range(20))
def test_distilled_barcode_equals_full_barcode_with_ties(seed):
    D = tie_instance(seed, n=12)
    assert barcode_from_complex(build_dvr(D).simplices) == full_vr_barcode(D)


@pytest.mark.parametrize("seed", range(10))
def test_clearing_does_not_change_barcode(seed):
    _, D = random_instance(seed)
    for cells in (build_dvr(D).simplices, full_complex(D)):
        F = build_filtration(cells)
        on, off = reduce(F, clearing=True), reduce(F, clearing=False)
        _check_pairs(off, F)
        assert extract_barcode(on, 1) == extract_barcode(off, 1)


def test_relabeling_leaves_barcode_unchanged():
    rng = np.random.default_rng(7)
    pts = rng.uniform(size=(20, 3))
    ref = barcode_from_complex(build_dvr(DistanceMatrix.from_points(pts)).simplices)
    for _ in range(10):
        perm = rng.permutation(20)
        assert barcode_from_complex(build_dvr(DistanceMatrix.from_points(pts[perm])).simplices) == ref
