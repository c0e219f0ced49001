"""Acceptance criteria, one test each; every test reports a PASS or FAIL line."""

import time
from itertools import combinations
from statistics import median

import numpy as np

from distilled_rips import cli
from distilled_rips.core import DistanceMatrix, diameter
from distilled_rips.datasets import circle_of_circles
from distilled_rips.distill import build_dvr
from distilled_rips.morse import Matching, verify_acyclic
from distilled_rips.oracle import brute_apparent_pairs, full_vr_barcode
from distilled_rips.persistence import barcode_from_complex, mst_edges
from distilled_rips.rnc import crnc, rnc
from oracles import distilled_tops, random_instance, square4, triangle3

SEEDS = range(100)
SIZES = [50, 100, 200, 300, 400, 500, 600, 700]


def test_oracle_equivalence(verdict):
    t0 = time.perf_counter()
    bad = [s for s in SEEDS
           if barcode_from_complex(build_dvr(random_instance(s)[1]).simplices) != full_vr_barcode(random_instance(s)[1])]
    secs = time.perf_counter() - t0
    verdict(1, not bad and secs < 60,
            f"{len(SEEDS) - len(bad)}/{len(SEEDS)} random clouds match the full barcode exactly ({secs:.1f} s)")


def test_square_barcode(verdict):
    bars = barcode_from_complex(build_dvr(square4()).simplices)
    verdict(2, bars.degree(1) == [(1.0, 1.4142135623730951)], f"square barcode {bars.degree(1)}")


def test_circle_of_circles(verdict):
    D = DistanceMatrix.from_points(circle_of_circles(12, 15, seed=0))
    pers = sorted(d - b for b, d in barcode_from_complex(build_dvr(D).simplices).degree(1))
    big = [p for p in pers if p > 0.1]
    dominant = [p for i, p in enumerate(big) if p > 5 * median(big[:i] + big[i + 1:])]
    verdict(3, len(big) == 13 and len(dominant) == 1,
            f"{len(big)} intervals above 0.1, {len(dominant)} dominant (largest {max(pers):.3f})")


def test_matching_validity(verdict):
    problems = []
    for s in SEEDS:
        _, D = random_instance(s)
        M = Matching(D)
        apparent = brute_apparent_pairs(D)
        for e in combinations(range(D.n), 2):
            tau = M.partner_up(e)
            if tau is None:
                continue
            if M.partner_down(tau) != e or diameter(tau, D) != diameter(e, D) or (e, tau) not in apparent:
                problems.append((s, e))
        if not verify_acyclic(combinations(range(D.n), 3), D, matching=M):
            problems.append((s, "cycle"))
    verdict(4, not problems, f"{len(SEEDS)} instances, {len(problems)} matching violations")


def test_seeding_equals_definition(verdict):
    seeds = [s for s in SEEDS if random_instance(s)[1].n <= 12]
    bad = [s for s in seeds
           if set(build_dvr(random_instance(s)[1]).top_simplices) != distilled_tops(random_instance(s)[1])]
    verdict(5, bool(seeds) and not bad, f"{len(seeds) - len(bad)}/{len(seeds)} instances with n <= 12 agree")


def test_scaling_trend(verdict):
    rows = cli.bench_rows(SIZES, "cube", seed=0)
    n_top = {r["n"]: r["n_top"] for r in rows}
    _, _, r2 = cli.linear_fit(list(n_top), list(n_top.values()))
    ratio = n_top[700] / n_top[100]
    verdict(6, r2 >= 0.9 and ratio <= 10,
            f"R^2 = {r2:.4f} (need >= 0.9), n_top(700)/n_top(100) = {ratio:.2f} (need <= 10); "
            f"n_top = {list(n_top.values())}")


def _cli_bytes(capsys, argv):
    assert cli.main(argv) == 0
    return capsys.readouterr().out


def test_determinism(verdict, capsys, tmp_path):
    from distilled_rips.core import save_points
    from distilled_rips.datasets import cube
    files = []
    for k, pts in enumerate([cube(300, seed=0), random_instance(1)[0], random_instance(2)[0]]):
        p = tmp_path / f"c{k}.csv"
        save_points(p, pts)
        files.append(str(p))
    differing = []
    for f in files:
        outs = set()
        for w in ("1", "2", "8", "1"):
            outs.add(_cli_bytes(capsys, ["compute", "--input", f, "--workers", w, "--with-ph0"])
                     + _cli_bytes(capsys, ["stats", "--input", f, "--workers", w, "--no-timing"]))
        if len(outs) != 1:
            differing.append(f)
    bench = {_cli_bytes(capsys, ["bench", "--sizes", "50,100", "--no-timing", "--workers", w])
             for w in ("1", "2", "8")}
    verdict(7, not differing and len(bench) == 1,
            f"{len(files)} inputs x workers 1/2/8 + rerun, {len(differing)} differ; bench identical: {len(bench) == 1}")


def test_relabeling(verdict):
    rng = np.random.default_rng(2024)
    pts = rng.uniform(size=(20, 3))
    ref = barcode_from_complex(build_dvr(DistanceMatrix.from_points(pts)).simplices)
    changed = sum(barcode_from_complex(build_dvr(DistanceMatrix.from_points(pts[rng.permutation(20)])).simplices) != ref
                  for _ in range(20))
    verdict(8, changed == 0, f"20 permutations of a 20-point cloud, {changed} changed the barcode")


def test_crnc_containment(verdict):
    fixtures = [(None, square4()), (None, triangle3())] + [random_instance(s) for s in SEEDS]
    bad = []
    for k, (pts, D) in enumerate(fixtures):
        for q in (1, 2):
            if not set(crnc(D, q)) <= set(rnc(D, q)):
                bad.append((k, q))
        if pts is not None and not set(mst_edges(D)) <= set(rnc(D, 1)):
            bad.append((k, "mst"))
    verdict(9, not bad, f"{len(fixtures)} fixtures, q = 1 and 2, {len(bad)} containment failures")
