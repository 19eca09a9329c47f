"""Command-line front end.

Every subcommand reads a domain spec (JSON) and writes JSON/CSV results and
optional SVG figures into ``--out``.  Exit codes: 0 success, 1 malformed
input, 2 eigensolver non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import plotting
from .bounds import domain_bounds
from .cuts import CutError, check_cut, cutset_from_dict, heuristic_min_cut
from .experiments import EXPERIMENTS, SCHEMA, run_experiment, write_csv
from .families import GENERATORS, make_disk, make_punctured
from .geometry import area, domain_from_dict
from .nets import maximal_eps_net, verify_partition_inclusions, voronoi_partition
from .potential import pole_potential_from_domain
from .solver import discretize, lowest_eigenpairs


class InputError(Exception):
    pass


def _dump(path, obj):
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")
    print(f"wrote {path}")


def _load_spec(path):
    try:
        with open(path) as fh:
            spec = json.load(fh)
        domain = domain_from_dict(spec)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"malformed domain spec {path}: {exc}") from exc
    return spec, domain


def _fluxes(args, spec, domain):
    if args.fluxes is not None:
        try:
            fl = [float(x) for x in args.fluxes.split(",") if x.strip()]
        except ValueError as exc:
            raise InputError(f"bad --fluxes: {exc}") from exc
    else:
        fl = [float(x) for x in spec.get("fluxes", [])]
        if not fl and domain.n_holes:
            raise InputError("no fluxes given (use --fluxes or a 'fluxes' entry in the spec)")
    if len(fl) == 1 and domain.n_holes > 1:
        fl = fl * domain.n_holes
    if len(fl) != domain.n_holes:
        raise InputError(f"expected {domain.n_holes} fluxes, got {len(fl)}")
    return fl


def _out(args):
    os.makedirs(args.out, exist_ok=True)
    return args.out


def write_eigenvector_csv(path, grid, u):
    with open(path, "w", newline="") as fh:
        fh.write(f"# schema={SCHEMA}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y", "re", "im"])
        for (x, y), z in zip(grid.coords, u):
            w.writerow([repr(float(x)), repr(float(y)), repr(float(z.real)), repr(float(z.imag))])
    print(f"wrote {path}")


def _solve(args, spec, domain, fluxes, out, figures=False):
    try:
        grid = discretize(domain, pole_potential_from_domain(domain, fluxes), args.spacing, args.eta)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    res = lowest_eigenpairs(grid, k=args.k, tol=args.tol, maxiter=args.maxiter, seed=args.seed)
    if not res.converged:
        print(f"eigensolver did not converge: best residual {res.residuals.max():.3e}", file=sys.stderr)
    _dump(os.path.join(out, "spectrum.json"), res.to_dict())
    write_eigenvector_csv(os.path.join(out, "eigenvector.csv"), grid, res.ground_state)
    if figures:
        path = os.path.join(out, "eigenvector.svg")
        plotting.modulus_figure(path, grid, res.ground_state, domain, "|u1|")
        print(f"wrote {path}")
    return grid, res


def cmd_solve(args):
    spec, domain = _load_spec(args.domain)
    _, res = _solve(args, spec, domain, _fluxes(args, spec, domain), _out(args))
    return 0 if res.converged else 2


def _bounds(args, spec, domain, fluxes):
    cuts = None
    if getattr(args, "cuts", None):
        try:
            with open(args.cuts) as fh:
                cuts = cutset_from_dict(json.load(fh))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise InputError(f"malformed cut file {args.cuts}: {exc}") from exc
    try:
        return domain_bounds(domain, fluxes, cuts, epsilon=args.epsilon, family=spec.get("family"))
    except CutError as exc:
        raise InputError(str(exc)) from exc


def cmd_bounds(args):
    spec, domain = _load_spec(args.domain)
    reports = _bounds(args, spec, domain, _fluxes(args, spec, domain))
    _dump(os.path.join(_out(args), "bounds.json"), [r.to_dict() for r in reports])
    return 0


def _epsilon(args):
    if args.epsilon is None or not args.epsilon > 0:
        raise InputError("--epsilon must be given and positive")
    return args.epsilon


def cmd_net(args):
    _, domain = _load_spec(args.domain)
    try:
        net = maximal_eps_net(domain, _epsilon(args))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    d = net.to_dict()
    d["probe"] = net.probe
    _dump(os.path.join(_out(args), "net.json"), d)
    return 0


def cmd_partition(args):
    _, domain = _load_spec(args.domain)
    out = _out(args)
    try:
        net = maximal_eps_net(domain, _epsilon(args))
        part = voronoi_partition(domain, net)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    rep = verify_partition_inclusions(part, net, domain)
    _dump(os.path.join(out, "partition.json"), {
        "epsilon": net.epsilon,
        "points": net.to_dict()["points"],
        "cell_areas": [float(a) for a in part.areas()],
        "area_sum": float(np.sum(part.areas())),
        "inner_inclusion": list(rep.inner),
        "outer_inclusion": list(rep.outer),
        "precondition_delta_gt_eps": rep.precondition_met,
        "passed": rep.passed,
    })
    path = os.path.join(out, "partition.svg")
    plotting.domain_figure(path, domain, partition=part, net=net, title=f"eps = {net.epsilon:g}")
    print(f"wrote {path}")
    return 0


def cmd_cuts(args):
    _, domain = _load_spec(args.domain)
    out = _out(args)
    if domain.n_holes == 0:
        raise InputError("domain is simply connected: nothing to cut")
    cuts = heuristic_min_cut(domain)
    d = cuts.to_dict()
    d["admissible"] = check_cut(domain, cuts)[0]
    _dump(os.path.join(out, "cuts.json"), d)
    path = os.path.join(out, "cuts.svg")
    plotting.domain_figure(path, domain, cuts=cuts, title=f"cut total {cuts.total:.6g}")
    print(f"wrote {path}")
    return 0


def cmd_family(args):
    params = {}
    for kv in args.param or []:
        if "=" not in kv:
            raise InputError(f"--param expects key=value, got {kv!r}")
        k, v = kv.split("=", 1)
        params[k] = v
    try:
        if args.name == "punctured-disk":
            disk = make_disk(float(params.get("radius", 1.0)))
            eps = float(params.get("epsilon", 0.25))
            domain = make_punctured(disk, maximal_eps_net(disk, eps))
            meta = {"name": "punctured-disk", "epsilon": eps}
        else:
            domain = GENERATORS[args.name](params)
            meta = {"name": args.name, **{k: float(v) if k != "k" else int(v) for k, v in params.items()}}
    except (ValueError, KeyError) as exc:
        raise InputError(str(exc)) from exc
    spec = domain.to_dict()
    spec["family"] = meta
    _dump(os.path.join(_out(args), f"{args.name}.json"), spec)
    return 0


def cmd_experiment(args):
    run_experiment(args.name, _out(args), seed=args.seed)
    print(f"wrote experiment {args.name} into {args.out}")
    return 0


def cmd_report(args):
    """Solve, bound and cut one domain; write tables and figures together."""
    spec, domain = _load_spec(args.domain)
    fluxes = _fluxes(args, spec, domain)
    out = _out(args)
    grid, res = _solve(args, spec, domain, fluxes, out, figures=True)
    reports = _bounds(args, spec, domain, fluxes)
    _dump(os.path.join(out, "bounds.json"), [r.to_dict() for r in reports])
    lam = float(res.eigenvalues[0])
    rows = []
    for r in reports:
        if r.target != "lambda1(A)":
            ok = ""
        elif r.kind == "lower":
            ok = lam >= r.value
        else:
            ok = lam <= r.value
        rows.append((r.name, r.kind, r.target, r.value, r.asserted, lam, ok))
    write_csv(os.path.join(out, "report.csv"),
              ["bound", "kind", "target", "value", "asserted", "lambda1_grid", "consistent"], rows,
              f"spacing={grid.spacing!r} eta={grid.eta!r} area={area(domain)!r}")
    print(f"wrote {os.path.join(out, 'report.csv')}")
    cuts = None
    if domain.n_holes:
        cuts = heuristic_min_cut(domain)
        _dump(os.path.join(out, "cuts.json"), cuts.to_dict())
    path = os.path.join(out, "domain.svg")
    plotting.domain_figure(path, domain, cuts=cuts, title="domain and cut")
    print(f"wrote {path}")
    return 0 if res.converged else 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="abspec", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, domain=True):
        if domain:
            sp.add_argument("--domain", required=True, help="domain spec JSON")
        sp.add_argument("--out", default=".", help="output directory")
        sp.add_argument("--seed", type=int, default=42)

    def solver_args(sp):
        sp.add_argument("--fluxes", help="comma-separated fluxes (holes then punctures)")
        sp.add_argument("--spacing", type=float, default=1 / 128)
        sp.add_argument("--eta", type=float, default=None, help="puncture radius (default 2*spacing)")
        sp.add_argument("--k", type=int, default=1, help="number of eigenpairs")
        sp.add_argument("--tol", type=float, default=1e-8, help="eigenpair residual tolerance")
        sp.add_argument("--maxiter", type=int, default=5000)

    sp = sub.add_parser("solve", help="lowest eigenpairs of the magnetic Neumann Laplacian")
    common(sp)
    solver_args(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("bounds", help="all applicable eigenvalue bounds")
    common(sp)
    sp.add_argument("--fluxes")
    sp.add_argument("--cuts", help="cut JSON to use instead of the heuristic cut")
    sp.add_argument("--epsilon", type=float, default=None, help="net spacing of a punctured domain")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("net", help="maximal eps-net")
    common(sp)
    sp.add_argument("--epsilon", type=float)
    sp.set_defaults(func=cmd_net)

    sp = sub.add_parser("partition", help="Voronoi partition of a maximal eps-net")
    common(sp)
    sp.add_argument("--epsilon", type=float)
    sp.set_defaults(func=cmd_partition)

    sp = sub.add_parser("cuts", help="heuristic admissible cut")
    common(sp)
    sp.set_defaults(func=cmd_cuts)

    sp = sub.add_parser("family", help="emit the domain spec of a generator")
    sp.add_argument("name", choices=sorted(GENERATORS) + ["punctured-disk"])
    sp.add_argument("--param", action="append", help="generator parameter key=value (repeatable)")
    common(sp, domain=False)
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("experiment", help="run a named experiment")
    sp.add_argument("name", choices=sorted(EXPERIMENTS))
    common(sp, domain=False)
    sp.set_defaults(func=cmd_experiment)

    sp = sub.add_parser("report", help="solve + bounds + cut with figures")
    common(sp)
    solver_args(sp)
    sp.add_argument("--cuts")
    sp.add_argument("--epsilon", type=float, default=None)
    sp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
