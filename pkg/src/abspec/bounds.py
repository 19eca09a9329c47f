"""Closed-form bounds on the first magnetic eigenvalue.

Every bound is a pure formula returning a :class:`BoundReport` that carries
its hypotheses as (description, met) pairs; a report with an unmet
hypothesis is advisory only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geometry import PlanarDomain, area as domain_area, diameter, interior_ball_radius, perimeter, widths
from .potential import dist_to_integers
from .solver import disk_neumann_lambda2_oracle

HOLES_CONSTANT = 544 * math.pi
EPS_NET_CONSTANT = 1.0 / 64
WEIN_CONSTANT = math.pi / 256
CUT_CONSTANT = 8 * math.pi


@dataclass(frozen=True)
class BoundReport:
    name: str
    kind: str  # "upper" | "lower"
    value: float
    preconditions: tuple = ()
    inputs: dict = field(default_factory=dict)
    target: str = "lambda1(A)"

    def __post_init__(self):
        if self.kind not in ("upper", "lower"):
            raise ValueError("kind must be 'upper' or 'lower'")
        if not self.value >= 0:
            raise ValueError(f"{self.name}: bound value must be nonnegative, got {self.value}")
        object.__setattr__(self, "preconditions", tuple((str(d), bool(m)) for d, m in self.preconditions))

    @property
    def asserted(self) -> bool:
        return all(m for _, m in self.preconditions)

    @property
    def advisory(self) -> bool:
        return not self.asserted

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "value": self.value,
            "preconditions": [{"desc": d, "met": m} for d, m in self.preconditions],
            "inputs": dict(self.inputs),
            "target": self.target,
        }


def _inv_abs_log(x):
    """1 / |ln x|, infinite at x = 1 (the bound then carries no information)."""
    L = abs(math.log(x))
    return math.inf if L == 0 else 1.0 / L


def _positive(name, x):
    if not x > 0:
        raise ValueError(f"{name} must be positive")


def ub_holes(n: int, area: float) -> BoundReport:
    """C n / |Omega| with C = 544 pi; zero for simply connected domains."""
    _positive("area", area)
    if n < 0:
        raise ValueError("n must be nonnegative")
    return BoundReport("ub_holes", "upper", HOLES_CONSTANT * n / area,
                       (("n >= 0 and area > 0", True),), {"n": n, "area": area})


def lb_eps_net(epsilon: float, dphi: float, convex: bool = True, smooth: bool = True,
               delta_exceeds_eps: bool = True, maximal_net: bool = True) -> BoundReport:
    """d(Phi, Z)^2 / (64 eps^2) for domains punctured at a maximal eps-net."""
    _positive("epsilon", epsilon)
    pre = (("domain convex", convex), ("smooth boundary", smooth),
           ("delta-interior ball with delta > eps", delta_exceeds_eps),
           ("punctures form a maximal eps-net", maximal_net))
    return BoundReport("lb_eps_net", "lower", EPS_NET_CONSTANT * dphi**2 / epsilon**2, pre,
                       {"epsilon": epsilon, "dphi": dphi})


def lb_eps_net_count(n: int, area: float, dphi: float, convex: bool = True, smooth: bool = True,
                     delta_exceeds_eps: bool = True, maximal_net: bool = True) -> BoundReport:
    """(pi/256) n d(Phi, Z)^2 / |Omega|, the count form of the eps-net bound."""
    _positive("area", area)
    pre = (("domain convex", convex), ("smooth boundary", smooth),
           ("delta-interior ball with delta > eps", delta_exceeds_eps),
           ("punctures form a maximal eps-net", maximal_net))
    return BoundReport("lb_eps_net_count", "lower", WEIN_CONSTANT * n * dphi**2 / area, pre,
                       {"n": n, "area": area, "dphi": dphi})


def ub_cut(n: int, area: float, h_list) -> BoundReport:
    """(8 pi n / |Omega|) sum_j 1/|ln(h_j / 2)| for an admissible cut."""
    _positive("area", area)
    h = [float(x) for x in h_list]
    nonempty = len(h) > 0 and all(x > 0 for x in h)
    total = math.fsum(h)
    pre = (("cut nonempty", nonempty),
           ("total cut length <= area / (2 pi)", total <= area / (2 * math.pi)),
           ("every h_j <= 1", all(x <= 1 for x in h)))
    value = CUT_CONSTANT * n / area * math.fsum(_inv_abs_log(x / 2) for x in h) if nonempty else math.inf
    return BoundReport("ub_cut", "upper", value, pre, {"n": n, "area": area, "h_total": total})


def ub_cut_aggregate(n: int, area: float, h_total: float, each_below_e2: bool = True) -> BoundReport:
    """(8 pi n^2 / |Omega|) / |ln(h / n)|, the Jensen-aggregated cut bound."""
    _positive("area", area)
    _positive("h_total", h_total)
    pre = (("every h_j <= e^-2", each_below_e2),
           ("h <= n e^-2", h_total <= n * math.exp(-2)))
    return BoundReport("ub_cut_aggregate", "upper",
                       CUT_CONSTANT * n**2 / area * _inv_abs_log(h_total / n), pre,
                       {"n": n, "area": area, "h_total": h_total})


def ub_doubly_connected(area: float, h: float) -> BoundReport:
    """8 pi / (|Omega| |ln(h/2)|) with h the cut length of a doubly connected domain."""
    _positive("area", area)
    _positive("h", h)
    pre = (("h <= 1", h <= 1), ("h <= area / (2 pi)", h <= area / (2 * math.pi)))
    return BoundReport("ub_doubly_connected", "upper", CUT_CONSTANT / area * _inv_abs_log(h / 2), pre,
                       {"area": area, "h": h})


def lb_annulus(perimF: float, beta: float, B: float, dphi: float, convex: bool = True) -> BoundReport:
    """4 pi^2 beta^2 d^2 / (|dF|^2 B^2) for an annulus F minus G."""
    _positive("perimeter", perimF)
    _positive("B", B)
    pre = (("F and G convex", convex), ("beta <= B", beta <= B * (1 + 1e-12)))
    val = 4 * math.pi**2 * beta**2 * dphi**2 / (perimF**2 * B**2)
    return BoundReport("lb_annulus", "lower", val, pre,
                       {"perimeter": perimF, "beta": beta, "B": B, "dphi": dphi})


def lb_annulus_sharp(areaF: float, perimF: float, diamF: float, beta: float, B: float, dphi: float,
                     doubly_convex: bool = True) -> BoundReport:
    """(pi^2/8) |F|^2 beta d^2 / (|dF|^2 D^4 B)."""
    for nm, x in (("area", areaF), ("perimeter", perimF), ("diameter", diamF), ("B", B)):
        _positive(nm, x)
    val = math.pi**2 / 8 * areaF**2 * beta * dphi**2 / (perimF**2 * diamF**4 * B)
    return BoundReport("lb_annulus_sharp", "lower", val, (("doubly convex", doubly_convex),),
                       {"area": areaF, "perimeter": perimF, "diameter": diamF,
                        "beta": beta, "B": B, "dphi": dphi})


def fundamental_piece_constant(k: int) -> float:
    return math.pi**2 / (2**15 * math.sqrt(1 + k**-3.0))


def lb_fundamental_piece(k: int, dphi: float) -> BoundReport:
    """c(k) sqrt(k) d^2, valid for the fundamental piece and for the tiled domain."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return BoundReport("lb_fundamental_piece", "lower",
                       fundamental_piece_constant(k) * math.sqrt(k) * dphi**2,
                       (("k >= 2", True), ("equal fluxes on all holes", True)),
                       {"k": k, "dphi": dphi})


def sw_upper(area: float) -> BoundReport:
    """Weinberger majorant pi * lambda_2(unit disk) / |Omega| of the second Neumann eigenvalue."""
    _positive("area", area)
    return BoundReport("sw_upper", "upper", math.pi * disk_neumann_lambda2_oracle() / area,
                       (("area > 0", True),), {"area": area}, target="lambda2(0)")


def domain_bounds(domain: PlanarDomain, fluxes, cuts=None, epsilon: float | None = None,
                  family: dict | None = None) -> list:
    """Every bound applicable to a domain, with hypotheses evaluated from its geometry.

    ``cuts`` is an admissible CutSet (the heuristic cut is used when absent),
    ``epsilon`` the net spacing of a punctured domain, and ``family`` the
    generator metadata (e.g. ``{"name": "omega-k", "k": 3}``).
    """
    from .cuts import check_cut, heuristic_min_cut

    fluxes = [float(f) for f in fluxes]
    n = domain.n_holes
    if len(fluxes) != n:
        raise ValueError(f"expected {n} fluxes, got {len(fluxes)}")
    A = domain_area(domain)
    dists = [dist_to_integers(f) for f in fluxes]
    F = min(dists) if dists else 0.0
    out = [ub_holes(n, A)]
    if n == 0:
        return out
    if cuts is None:
        cuts = heuristic_min_cut(domain)
    admissible, _ = check_cut(domain, cuts)

    def with_cut_flag(rep):
        pre = rep.preconditions + (("cut admissible", admissible),)
        return BoundReport(rep.name, rep.kind, rep.value, pre, rep.inputs, rep.target)

    if len(domain.holes) == 1 and not domain.punctures:
        hole = domain.holes[0]
        beta, B = widths(domain.outer, hole)
        convex = domain.outer.is_convex() and hole.is_convex()
        out.append(lb_annulus(perimeter(domain.outer), beta, B, F, convex))
        out.append(lb_annulus_sharp(domain.outer.area(), perimeter(domain.outer), diameter(domain.outer),
                                    beta, B, F, convex))
        out.append(with_cut_flag(ub_doubly_connected(A, cuts.total)))
    if domain.punctures and not domain.holes:
        convex = domain.outer.is_convex()
        smooth = domain.outer.kind != "polygon"
        delta = interior_ball_radius(domain)
        eps_ok = epsilon is not None and delta > epsilon
        equal = len(set(dists)) == 1
        out.append(lb_eps_net_count(len(domain.punctures), domain.outer.area(), F, convex, smooth,
                                    eps_ok, epsilon is not None))
        if epsilon is not None:
            out.append(lb_eps_net(epsilon, F, convex, smooth, eps_ok, True))
        if not equal:
            out = [r if r.kind == "upper" else BoundReport(
                r.name, r.kind, r.value, r.preconditions + (("F^2 = min_j d(Phi_j, Z)^2 used", True),),
                r.inputs, r.target) for r in out]
    out.append(with_cut_flag(ub_cut(n, A, cuts.lengths)))
    each = all(h <= math.exp(-2) for h in cuts.lengths)
    out.append(with_cut_flag(ub_cut_aggregate(n, A, cuts.total, each)))
    if family and family.get("name") == "omega-k":
        rep = lb_fundamental_piece(int(family["k"]), F)
        equal = len(set(dists)) == 1
        out.append(BoundReport(rep.name, rep.kind, rep.value,
                               (("k >= 2", True), ("equal fluxes on all holes", equal)), rep.inputs))
    out.append(sw_upper(A))
    return out
