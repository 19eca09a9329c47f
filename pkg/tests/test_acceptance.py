"""End-to-end acceptance criteria, one test per criterion."""

import filecmp
import functools
import math
import os
import time

import numpy as np
import pytest

from abspec.bounds import domain_bounds, lb_eps_net_count, lb_fundamental_piece, sw_upper, ub_cut, ub_holes
from abspec.cli import main as cli_main
from abspec.cuts import heuristic_min_cut, omega_k_reference_cut
from abspec.experiments import EXPERIMENTS, omega_k_spacing, punctured_disk, thin_bridge_trend
from abspec.families import (make_annulus, make_disk, make_fundamental_piece, make_omega_k, make_thin_bridge,
                             omega_k_closed_forms, rectangle)
from abspec.geometry import PlanarDomain, area, diameter, perimeter, widths
from abspec.nets import (ball_packing_net, good_ball, good_ball_radius, maximal_eps_net, packing_count_bounds,
                         verify_partition_inclusions, voronoi_partition)
from abspec.potential import pole_potential_from_domain
from abspec.solver import (annulus_oracle, cutoff_trial_field, discretize, gauge_transform,
                           log_cutoff_trial_field, lowest_eigenpairs, rayleigh_quotient)
from conftest import record_criterion

ANNULUS = make_annulus(0.5, 1.0)


@functools.lru_cache(maxsize=None)
def annulus_solve(spacing, flux):
    t = time.perf_counter()
    g = discretize(ANNULUS, pole_potential_from_domain(ANNULUS, [flux]), spacing)
    r = lowest_eigenpairs(g)
    return g, r, time.perf_counter() - t


@functools.lru_cache(maxsize=None)
def bridge_solve(eps, spacing=1 / 160):
    dom = make_thin_bridge(eps=eps)
    g = discretize(dom, pole_potential_from_domain(dom, [0.5]), spacing)
    return dom, g, lowest_eigenpairs(g)


def test_criterion_01_annulus_oracle():
    _, r, dt = annulus_solve(1 / 256, 0.5)
    oracle = annulus_oracle(0.5, 1.0, 0.5)
    rel = abs(r.eigenvalues[0] - oracle) / oracle
    ok = r.converged and rel <= 0.02 and dt <= 60
    record_criterion(1, "annulus oracle agreement", ok,
                     f"lambda1={r.eigenvalues[0]:.8f} oracle={oracle:.8f} rel={rel:.2e} time={dt:.1f}s")
    assert ok


def test_criterion_02_integer_flux_degeneracy():
    details, ok = [], True
    for flux in (0.0, 1.0):
        coarse = annulus_solve(1 / 128, flux)[1].eigenvalues[0]
        fine = annulus_solve(1 / 256, flux)[1].eigenvalues[0]
        # both spacings can sit at the floating-point floor of an exactly zero eigenvalue
        trend = fine <= coarse / 3 or max(coarse, fine) <= 1e-9
        ok &= coarse <= 1e-3 and trend
        details.append(f"flux {flux:g}: {coarse:.2e} -> {fine:.2e}")
    record_criterion(2, "integer-flux degeneracy", ok, "; ".join(details))
    assert ok


def test_criterion_03_gauge_invariance():
    g = discretize(ANNULUS, pole_potential_from_domain(ANNULUS, [0.5]), 1 / 64)
    lam = lowest_eigenpairs(g).eigenvalues[0]
    rng = np.random.default_rng(2024)
    shifts = []
    for _ in range(10):
        f = rng.uniform(-np.pi, np.pi, g.n_vertices) * rng.uniform(1, 100)
        shifts.append(abs(lowest_eigenpairs(gauge_transform(g, f)).eigenvalues[0] - lam))
    ok = max(shifts) <= 1e-10
    record_criterion(3, "gauge invariance", ok, f"max shift {max(shifts):.1e} over 10 gauges")
    assert ok


def test_criterion_04_bound_sandwich():
    _, r, _ = annulus_solve(1 / 256, 0.5)
    lam = r.eigenvalues[0]
    by = {b.name: b for b in domain_bounds(ANNULUS, [0.5])}
    lb, sharp, ub = by["lb_annulus"], by["lb_annulus_sharp"], by["ub_holes"]
    ok = (lb.asserted and sharp.asserted and ub.asserted
          and lb.value == pytest.approx(0.25, rel=1e-9) and lb.value <= lam * 1.02
          and ub.value == pytest.approx(544 * 4 / 3, rel=1e-12) and lam * 0.98 <= ub.value
          and sharp.value == pytest.approx(math.pi**2 / 2048, rel=1e-9) and sharp.value <= lam)
    assert ub_holes(1, 3 * math.pi / 4).value == ub.value
    record_criterion(4, "bound sandwich on the annulus", ok,
                     f"{sharp.value:.5f}, {lb.value:.3f} <= {lam:.5f} <= {ub.value:.2f}")
    assert ok


def test_criterion_05_omega_k_closed_forms():
    t = time.perf_counter()
    worst = 0.0
    for k in range(2, 9):
        cf = omega_k_closed_forms(k)
        piece = make_fundamental_piece(k)
        beta, B = widths(piece.outer, piece.holes[0])
        got = {
            "piece_area": area(piece), "outer_area": piece.outer.area(), "beta": beta, "B": B,
            "diameter": diameter(piece.outer), "perimeter": perimeter(piece.outer),
            "area": area(make_omega_k(k)), "cut_total": omega_k_reference_cut(k).total,
        }
        exact = {
            "piece_area": 8 / k**2 + 4 / k**3.5, "outer_area": 16 / k**2, "beta": k**-2.5,
            "B": math.sqrt(1 + k**-3.0) / k, "diameter": 4 * math.sqrt(2) / k, "perimeter": 16 / k,
            "area": 8 + 4 / k**1.5, "cut_total": (2 * k - 1) / k**1.5,
        }
        for key, v in exact.items():
            worst = max(worst, abs(got[key] - v) / v, abs(cf[key] - v) / v)
    dt = time.perf_counter() - t
    ok = worst <= 1e-12 and dt <= 1.0
    record_criterion(5, "Omega_k closed forms, k = 2..8", ok, f"max rel err {worst:.1e}, time {dt:.2f}s")
    assert ok


def test_criterion_06_good_ball():
    sq = PlanarDomain(rectangle(0, 0, 1, 1))
    rng = np.random.default_rng(6)
    worst, ok = 0.0, True
    for _ in range(20):
        n = int(rng.integers(1, 11))
        poles = rng.uniform(0.02, 0.98, size=(n, 2))
        gb = good_ball(sq, poles)
        r = math.sqrt(1.0 / n) / (4 * math.sqrt(math.pi))
        clear = np.min(np.hypot(*(poles - np.asarray(gb.center)).T)) >= 2 * r - 1e-12
        ok &= gb.ratio <= 34 and gb.radius == pytest.approx(r, rel=1e-14) and clear
        worst = max(worst, gb.ratio)
    record_criterion(6, "good-ball lemma, 20 configurations", ok, f"max ratio {worst:.3f}")
    assert ok


def test_criterion_07_packing():
    ok, seen = True, {}
    for q in (2, 3, 4):
        lo, hi = packing_count_bounds(float(q), 1.0)
        sizes = [len(ball_packing_net(float(q), 1.0, seed=s)) for s in range(100)]
        ok &= lo <= min(sizes) and max(sizes) <= hi
        seen[q] = (min(sizes), max(sizes), lo, hi)
    record_criterion(7, "packing sandwich, 100 nets per ratio", ok,
                     ", ".join(f"a/b={q}: {a}-{b} in [{lo:g}, {hi:g}]" for q, (a, b, lo, hi) in seen.items()))
    assert ok


def test_criterion_08_partition_inclusions():
    disk = make_disk()
    ok, details = True, []
    for eps in (0.15, 0.25):
        net = maximal_eps_net(disk, eps)
        part = voronoi_partition(disk, net)
        rep = verify_partition_inclusions(part, net, disk)
        err = abs(part.areas().sum() - math.pi)
        ok &= rep.passed and rep.precondition_met and err <= 1e-6
        details.append(f"eps={eps}: n={len(net)} area err {err:.1e}")
    record_criterion(8, "partition inclusions", ok, "; ".join(details))
    assert ok


def test_criterion_09_eps_net_sandwich_desk_scale():
    t = time.perf_counter()
    eps, h = 0.25, 1 / 512
    dom, net = punctured_disk(eps)
    n = len(net)
    g = discretize(dom, pole_potential_from_domain(dom, [0.5] * n), h, eta=2 * h)
    lam = lowest_eigenpairs(g).eigenvalues[0]
    A = area(dom)
    by = {b.name: b for b in domain_bounds(dom, [0.5] * n, epsilon=eps)}
    lower, upper = by["lb_eps_net_count"], by["ub_holes"]
    dt = time.perf_counter() - t
    ok = (lower.asserted and lower.value == pytest.approx(math.pi * n / (1024 * A), rel=1e-12)
          and upper.value == pytest.approx(544 * math.pi * n / A, rel=1e-12)
          and lower.value <= lam * 1.02 and lam <= upper.value and dt <= 600)
    record_criterion(9, "eps-net sandwich at spacing 1/512", ok,
                     f"n={n}: {lower.value:.4f} <= {lam:.4f} <= {upper.value:.1f}, "
                     f"normalized {lam * A / n:.4f}, time {dt:.0f}s")
    assert ok


def test_criterion_10_test_function_upper_bounds():
    g, r, _ = annulus_solve(1 / 256, 0.5)
    gb = good_ball(ANNULUS, [(0.0, 0.0)])
    rad = good_ball_radius(area(ANNULUS), 1)
    q1 = rayleigh_quotient(g, cutoff_trial_field(g, gb.center, gb.radius))
    ok1 = (gb.radius == pytest.approx(math.sqrt(3) / 8, rel=1e-12) and rad == gb.radius
           and r.eigenvalues[0] <= q1 <= 34 / gb.radius**2 * 1.05)
    dom, gbr, rb = bridge_solve(0.05)
    cut = heuristic_min_cut(dom)
    q2 = rayleigh_quotient(gbr, log_cutoff_trial_field(gbr, cut))
    ub = ub_cut(1, area(dom), cut.lengths).value
    ok2 = rb.eigenvalues[0] <= q2 <= ub * 1.10
    record_criterion(10, "test-function upper bounds", ok1 and ok2,
                     f"cutoff: {r.eigenvalues[0]:.4f} <= {q1:.2f} <= {34 / gb.radius**2 * 1.05:.1f}; "
                     f"log cutoff: {rb.eigenvalues[0]:.4f} <= {q2:.4f} <= {ub * 1.10:.3f}")
    assert ok1 and ok2


def test_criterion_11_thin_bridge_trend():
    _, rows = thin_bridge_trend(gaps=(0.2, 0.1, 0.05), spacing=1 / 160)
    lam1 = [r[3] for r in rows]
    lam2 = [r[4] for r in rows]
    ubdc = [r[5] for r in rows]
    floor = min(lam2)  # the fixed constant that lambda2(0) never drops below
    ok = (all(a > b for a, b in zip(lam1, lam1[1:])) and all(l < u for l, u in zip(lam1, ubdc))
          and all(v >= floor for v in lam2) and lam1[-1] < floor)
    record_criterion(11, "thin-bridge trend", ok,
                     "lambda1 " + " > ".join(f"{v:.4f}" for v in lam1)
                     + f"; lambda2(0) >= {floor:.3f}; ub_doubly_connected " + ", ".join(f"{v:.3f}" for v in ubdc))
    assert ok


def test_criterion_12_noncomparability():
    dom, net = punctured_disk(0.15)
    n = len(net)
    g = discretize(dom, pole_potential_from_domain(dom, [0.5] * n), 1 / 256)
    lam = lowest_eigenpairs(g).eigenvalues[0]
    sw = sw_upper(area(dom)).value
    ok = lam > sw
    record_criterion(12, "non-comparability (punctured disk)", ok,
                     f"n={n}: lambda1(A)={lam:.3f} > sw_upper={sw:.4f}")
    assert ok


def test_criterion_13_omega_k_properties():
    ok, details = True, []
    for k in (2, 3):
        t = time.perf_counter()
        h = omega_k_spacing(k, 64)
        piece, dom = make_fundamental_piece(k), make_omega_k(k)
        lp = lowest_eigenpairs(discretize(piece, pole_potential_from_domain(piece, [0.5]), h)).eigenvalues[0]
        lo = lowest_eigenpairs(discretize(dom, pole_potential_from_domain(dom, [0.5] * k * k), h)).eigenvalues[0]
        dt = time.perf_counter() - t
        lb = lb_fundamental_piece(k, 0.5).value
        cut = heuristic_min_cut(dom).total
        ok &= lo >= 0.98 * lp and lp >= lb and cut <= (2 * k - 1) / k**1.5 + 1e-12 and dt <= 900
        details.append(f"k={k}: {lo:.6f} vs piece {lp:.6f}, lb {lb:.2e}, cut {cut:.4f}, {dt:.1f}s")
    record_criterion(13, "Omega_k example properties", ok, "; ".join(details))
    assert ok


def _tree_equal(a, b):
    cmp = filecmp.dircmp(a, b)
    if cmp.left_only or cmp.right_only:
        return False
    _, mismatch, errors = filecmp.cmpfiles(a, b, cmp.common_files, shallow=False)
    return not mismatch and not errors and all(_tree_equal(os.path.join(a, d), os.path.join(b, d))
                                               for d in cmp.common_dirs)


def test_criterion_14_determinism(tmp_path):
    specs = tmp_path / "specs"
    for name, params in (("annulus", []), ("disk", []), ("omega-k", ["--param", "k=2"]),
                         ("thin-bridge", ["--param", "eps=0.1"]),
                         ("punctured-disk", ["--param", "epsilon=0.35"])):
        assert cli_main(["family", name, *params, "--out", str(specs)]) == 0

    def runs(out):
        s = lambda n: str(specs / f"{n}.json")
        cmds = [
            ["family", "omega-k", "--param", "k=3"],
            ["solve", "--domain", s("annulus"), "--fluxes", "0.5", "--spacing", "0.015625"],
            ["bounds", "--domain", s("omega-k"), "--fluxes", "0.5"],
            ["net", "--domain", s("disk"), "--epsilon", "0.25"],
            ["partition", "--domain", s("disk"), "--epsilon", "0.25"],
            ["cuts", "--domain", s("omega-k")],
            ["report", "--domain", s("thin-bridge"), "--fluxes", "0.5", "--spacing", "0.025"],
            *[["experiment", name] for name in sorted(EXPERIMENTS)],
        ]
        for i, c in enumerate(cmds):
            assert cli_main(c + ["--out", str(out / f"{i:02d}_{c[0]}")]) == 0, c

    runs(tmp_path / "a")
    runs(tmp_path / "b")
    n_files = sum(len(f) for _, _, f in os.walk(tmp_path / "a"))
    ok = _tree_equal(tmp_path / "a", tmp_path / "b")
    record_criterion(14, "determinism of every CLI subcommand", ok, f"{n_files} files byte-identical")
    assert ok
