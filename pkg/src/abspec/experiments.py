"""Named experiment pipelines producing CSV tables and SVG figures."""

from __future__ import annotations

import csv
import os

import numpy as np

from . import plotting
from .bounds import (lb_eps_net_count, lb_fundamental_piece, sw_upper, ub_cut, ub_doubly_connected,
                     ub_holes)
from .cuts import heuristic_min_cut, omega_k_reference_cut
from .families import make_disk, make_fundamental_piece, make_omega_k, make_punctured, make_thin_bridge
from .geometry import area
from .nets import maximal_eps_net, voronoi_partition
from .potential import pole_potential_from_domain
from .solver import discretize, log_cutoff_trial_field, lowest_eigenpairs, rayleigh_quotient

SCHEMA = 1


def write_csv(path, columns, rows, description: str = ""):
    """CSV with a versioned header comment; floats written with repr precision."""
    with open(path, "w", newline="") as fh:
        fh.write(f"# schema={SCHEMA}\n")
        if description:
            fh.write(f"# {description}\n")
        fh.write("# columns: " + ", ".join(columns) + "\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([c.split(" ")[0] for c in columns])
        for r in rows:
            w.writerow([_fmt(v) for v in r])


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _solve(domain, fluxes, spacing, k=1, eta=None, seed=42):
    grid = discretize(domain, pole_potential_from_domain(domain, fluxes), spacing, eta)
    return grid, lowest_eigenpairs(grid, k=k, seed=seed)


def punctured_disk(epsilon: float):
    disk = make_disk()
    net = maximal_eps_net(disk, epsilon)
    return make_punctured(disk, net), net


# ---------------------------------------------------------------------------


def noncomparability(out=None, spacing=1 / 256, bridge_spacing=1 / 160, seed=42):
    """lambda_1(A) against the zero-flux lambda_2 in both directions."""
    rows = []
    dom, net = punctured_disk(0.15)
    n = len(net)
    g, r = _solve(dom, [0.5] * n, spacing, seed=seed)
    _, r0 = _solve(dom, [0.0] * n, spacing, k=2, seed=seed)
    sw = sw_upper(area(dom)).value
    rows.append(("punctured-disk", 0.15, n, area(dom), r.eigenvalues[0], r0.eigenvalues[1], sw,
                 bool(r.eigenvalues[0] > sw)))
    tb = make_thin_bridge(eps=0.05)
    gb, rb = _solve(tb, [0.5], bridge_spacing, seed=seed)
    _, rb0 = _solve(tb, [0.0], bridge_spacing, k=2, seed=seed)
    rows.append(("thin-bridge", 0.05, 1, area(tb), rb.eigenvalues[0], rb0.eigenvalues[1],
                 sw_upper(area(tb)).value, bool(rb.eigenvalues[0] < rb0.eigenvalues[1])))
    columns = ["case", "parameter (net epsilon or gap)", "n holes", "area", "lambda1_A (flux 1/2)",
               "lambda2_0 (zero flux)", "sw_upper", "holds (punctured: lambda1_A > sw_upper; bridge: lambda1_A < lambda2_0)"]
    if out:
        write_csv(os.path.join(out, "noncomparability.csv"), columns, rows,
                  "lambda1 with flux 1/2 versus second zero-flux Neumann eigenvalue")
        plotting.modulus_figure(os.path.join(out, "noncomparability_punctured.svg"), g, r.ground_state,
                                dom, "punctured disk |u1|")
        plotting.modulus_figure(os.path.join(out, "noncomparability_bridge.svg"), gb, rb.ground_state,
                                tb, "thin bridge |u1|")
    return columns, rows


def thin_bridge_trend(out=None, gaps=(0.2, 0.1, 0.05), spacing=1 / 160, seed=42):
    """lambda_1(A) and the cut bounds as the bridge closes."""
    rows = []
    for eps in gaps:
        dom = make_thin_bridge(eps=eps)
        grid, r = _solve(dom, [0.5], spacing, seed=seed)
        _, r0 = _solve(dom, [0.0], spacing, k=2, seed=seed)
        cut = heuristic_min_cut(dom)
        rq = rayleigh_quotient(grid, log_cutoff_trial_field(grid, cut))
        A = area(dom)
        rows.append((eps, A, cut.total, r.eigenvalues[0], r0.eigenvalues[1],
                     ub_doubly_connected(A, cut.total).value, ub_cut(1, A, cut.lengths).value, rq))
        if out:
            plotting.domain_figure(os.path.join(out, f"thin_bridge_{eps:g}_cut.svg"), dom, cuts=cut,
                                   title=f"gap {eps:g}")
            plotting.modulus_figure(os.path.join(out, f"thin_bridge_{eps:g}_u1.svg"), grid, r.ground_state,
                                    dom, f"|u1|, gap {eps:g}")
    columns = ["gap", "area", "cut_total", "lambda1_A (flux 1/2)", "lambda2_0 (zero flux)",
               "ub_doubly_connected", "ub_cut", "rq_log_cutoff"]
    if out:
        write_csv(os.path.join(out, "thin_bridge_trend.csv"), columns, rows, "thin bridge, flux 1/2")
        g = [r[0] for r in rows]
        plotting.trend_figure(os.path.join(out, "thin_bridge_trend.svg"), g,
                              {"lambda1(A)": [r[3] for r in rows], "lambda2(0)": [r[4] for r in rows],
                               "ub_doubly_connected": [r[5] for r in rows]},
                              "gap", "eigenvalue", logy=True)
    return columns, rows


def omega_k_spacing(k: int, per_piece: int = 64) -> float:
    return (4.0 / k) / per_piece


def omega_k_table(out=None, ks=(2, 3, 4), per_piece=64, seed=42):
    """Closed forms, cuts, the sqrt(k) lower bound and lattice eigenvalues of Omega_k."""
    rows = []
    for k in ks:
        h = omega_k_spacing(k, per_piece)
        dom = make_omega_k(k)
        piece = make_fundamental_piece(k)
        _, rp = _solve(piece, [0.5], h, seed=seed)
        grid, r = _solve(dom, [0.5] * k * k, h, seed=seed)
        cut = heuristic_min_cut(dom)
        ref = omega_k_reference_cut(k)
        A = area(dom)
        rows.append((k, h, A, cut.total, ref.total, lb_fundamental_piece(k, 0.5).value,
                     rp.eigenvalues[0], r.eigenvalues[0], ub_cut(k * k, A, cut.lengths).value,
                     ub_holes(k * k, A).value))
        if out:
            plotting.domain_figure(os.path.join(out, f"omega_{k}_cut.svg"), dom, cuts=cut,
                                   title=f"Omega_{k} heuristic cut")
            plotting.modulus_figure(os.path.join(out, f"omega_{k}_u1.svg"), grid, r.ground_state, dom,
                                    f"|u1| on Omega_{k}")
    columns = ["k", "spacing", "area", "h_heuristic", "h_reference", "lb_fundamental_piece",
               "lambda1_piece", "lambda1_omega_k", "ub_cut", "ub_holes"]
    if out:
        write_csv(os.path.join(out, "omega_k_table.csv"), columns, rows, "equal flux 1/2 on every hole")
    return columns, rows


def eps_net_sandwich(out=None, epsilons=(0.35, 0.25), spacing=1 / 256, seed=42):
    """Normalised eigenvalue lambda_1 |Omega| / n on punctured disks, flux 1/2."""
    rows = []
    for eps in epsilons:
        dom, net = punctured_disk(eps)
        n = len(net)
        A = area(dom)
        grid, r = _solve(dom, [0.5] * n, spacing, seed=seed)
        lam = r.eigenvalues[0]
        lo = lb_eps_net_count(n, A, 0.5).value
        hi = ub_holes(n, A).value
        prod = lam * A / n
        rows.append((eps, n, A, spacing, grid.eta, lam, prod, lo, hi, bool(lo <= lam <= hi),
                     bool(1 / 1024 <= prod <= 544)))
        if out:
            part = voronoi_partition(make_disk(), net)
            plotting.domain_figure(os.path.join(out, f"eps_net_{eps:g}_partition.svg"), make_disk(),
                                   partition=part, net=net, title=f"eps = {eps:g}, n = {n}")
            plotting.modulus_figure(os.path.join(out, f"eps_net_{eps:g}_u1.svg"), grid, r.ground_state,
                                    dom, f"|u1|, eps = {eps:g}")
    columns = ["epsilon", "n", "area", "spacing", "eta", "lambda1_A (flux 1/2)", "normalized (lambda1 area / n)",
               "lb_eps_net_count", "ub_holes", "within_bounds", "within_display (1/1024..544)"]
    if out:
        write_csv(os.path.join(out, "eps_net_sandwich.csv"), columns, rows, "punctured unit disk")
    return columns, rows


EXPERIMENTS = {
    "noncomparability": noncomparability,
    "thin-bridge-trend": thin_bridge_trend,
    "omega-k-table": omega_k_table,
    "eps-net-sandwich": eps_net_sandwich,
}


def run_experiment(name: str, out=None, **kw):
    if name not in EXPERIMENTS:
        raise KeyError(f"unknown experiment {name!r}; choose from {sorted(EXPERIMENTS)}")
    if out:
        os.makedirs(out, exist_ok=True)
    return EXPERIMENTS[name](out, **kw)

