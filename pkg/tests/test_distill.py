import json
from itertools import combinations

import numpy as np
import pytest

from distilled_rips.core import DistanceMatrix, diameter
from distilled_rips.distill import build_dvr, critical_cofaces, dvr_stats
from distilled_rips.morse import Matching
from oracles import distilled_tops, random_instance, reduced_tops, square4, tie_instance, triangle3


def test_critical_cofaces_examples():
    assert critical_cofaces((0, 3), square4()) == [(0, 2, 3)]
    assert critical_cofaces((1, 2), square4()) == []
    for e in combinations(range(3), 2):
        assert critical_cofaces(e, triangle3()) == []


def test_square_complex():
    cx = build_dvr(square4())
    assert sorted(cx.top_simplices) == [(0, 1, 3), (0, 2, 3)]
    assert sorted(cx.of_dim(1)) == [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]
    assert (1, 2) not in cx
    assert cx.of_dim(0) == [(0,), (1,), (2,), (3,)]


def test_triangle_and_tiny_complexes():
    cx = build_dvr(triangle3())
    assert cx.top_simplices == [] and cx.of_dim(1) == []
    assert cx.of_dim(0) == [(0,), (1,), (2,)]
    two = build_dvr(DistanceMatrix([[0, 2], [2, 0]]))
    assert two.top_simplices == [] and sorted(two.simplices) == [(0,), (1,)]


def test_stats_examples():
    st = dvr_stats(build_dvr(square4()))
    assert (st.n_top, st.b_x, st.n_points, st.n_edges_total) == (2, 1, 4, 6)
    assert dvr_stats(build_dvr(triangle3())).n_top == 0
    one = dvr_stats(build_dvr(DistanceMatrix([[0.0]])))
    assert (one.n_points, one.n_edges_total, one.b_x, one.n_top, one.n_faces) == (1, 0, 0, 0, 1)
    assert "phase_ms" not in json.loads(one.to_json(timing=False))


def test_bad_degree():
    with pytest.raises(ValueError):
        build_dvr(square4(), q=3)


def _instances(count, n_range):
    for seed in range(count):
        yield random_instance(seed, n_range)[1]
    for seed in range(8):
        yield tie_instance(seed)


def test_algorithm_seeding_matches_definition_degree_one():
    for D in _instances(40, (4, 12)):
        assert set(build_dvr(D, 1).top_simplices) == distilled_tops(D, 1)


def test_algorithm_seeding_matches_definition_degree_two():
    for D in _instances(8, (5, 9)):
        assert set(build_dvr(D, 2).top_simplices) == distilled_tops(D, 2)


def test_reduced_complex_check_agrees_with_literal_version():
    for D in _instances(10, (5, 10)):
        M = Matching(D)
        literal = set(reduced_tops(D, 1))
        assert {t for t in combinations(range(D.n), 3) if M.in_reduced_complex(t)} == literal


def test_subcomplex_with_true_diameters():
    for D in _instances(20, (10, 25)):
        cx = build_dvr(D)
        for s, r in cx.simplices.items():
            assert r == diameter(s, D)
            for f in combinations(s, len(s) - 1):
                if f:
                    assert f in cx


@pytest.mark.parametrize("option", [dict(use_kernels=False), dict(low_memory=True),
                                    dict(use_kernels=False, low_memory=True)])
def test_code_paths_agree(option):
    for D in _instances(10, (8, 25)):
        assert build_dvr(D, **option).sorted_simplices() == build_dvr(D).sorted_simplices()


def test_worker_count_does_not_change_output():
    _, D = random_instance(11, (60, 60))
    ref = build_dvr(D, workers=1)
    for w in (2, 8):
        cx = build_dvr(D, workers=w)
        assert cx.top_simplices == ref.top_simplices
        assert cx.sorted_simplices() == ref.sorted_simplices()
        assert dvr_stats(cx).to_json(timing=False) == dvr_stats(ref).to_json(timing=False)


def test_degree_two_complex_holds_tetrahedra():
    _, D = random_instance(5, (15, 15))
    cx = build_dvr(D, 2)
    assert all(len(t) == 4 for t in cx.top_simplices)
    assert cx.n_faces == sum(1 for s in cx.simplices if len(s) <= 3)


def test_complex_grows_roughly_linearly_on_a_cube():
    pts = np.random.default_rng(1).uniform(0, 10, size=(300, 3))
    st = dvr_stats(build_dvr(DistanceMatrix.from_points(pts)))
    assert 0 < st.n_top < 10 * 300
