"""Domain generators: annuli, punctured domains, thin bridges and the Omega_k family."""

from __future__ import annotations

import math

import numpy as np

from .geometry import Circle, PlanarDomain, Polygon


def rectangle(x0: float, y0: float, x1: float, y1: float) -> Polygon:
    return Polygon(((x0, y0), (x1, y0), (x1, y1), (x0, y1)))


def make_disk(radius: float = 1.0, center=(0.0, 0.0)) -> PlanarDomain:
    return PlanarDomain(Circle(center, radius))


def make_annulus(r1: float, r2: float) -> PlanarDomain:
    if not 0 < r1 < r2:
        raise ValueError("need 0 < r1 < r2")
    return PlanarDomain(Circle((0.0, 0.0), r2), (Circle((0.0, 0.0), r1),))


def _piece_hole(k: int, x0: float, y0: float) -> Polygon:
    s = 4.0 / k
    g = k**-2.5
    cx = x0 + 0.5 * s
    return rectangle(cx - 1.0 / k, y0 + g, cx + 1.0 / k, y0 + s - g)


def make_fundamental_piece(k: int) -> PlanarDomain:
    """Square of side 4/k minus a centred rectangle 2/k wide and 2/k^{5/2} short of full height."""
    if k < 2:
        raise ValueError("k must be at least 2")
    s = 4.0 / k
    return PlanarDomain(rectangle(-s / 2, 0.0, s / 2, s), (_piece_hole(k, -s / 2, 0.0),))


def make_omega_k(k: int) -> PlanarDomain:
    """The square [-2, 2] x [0, 4] tiled by k^2 translated fundamental pieces."""
    if k < 2:
        raise ValueError("k must be at least 2")
    s = 4.0 / k
    holes = tuple(_piece_hole(k, -2.0 + c * s, r * s) for c in range(k) for r in range(k))
    return PlanarDomain(rectangle(-2.0, 0.0, 2.0, 4.0), holes)


def omega_k_closed_forms(k: int) -> dict:
    """Exact quantities of the fundamental piece and the assembled domain."""
    return {
        "piece_area": 8.0 / k**2 + 4.0 / k**3.5,
        "outer_area": 16.0 / k**2,
        "beta": k**-2.5,
        "B": math.sqrt(1.0 + k**-3.0) / k,
        "diameter": 4.0 * math.sqrt(2.0) / k,
        "perimeter": 16.0 / k,
        "cut_total": (2 * k - 1) / k**1.5,
        "area": 8.0 + 4.0 / k**1.5,
    }


def make_punctured(domain: PlanarDomain, net) -> PlanarDomain:
    """Add the net points as punctures."""
    pts = np.asarray(getattr(net, "points", net), dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        return domain
    if not domain.contains(pts).all():
        raise ValueError("net point outside the domain")
    return domain.with_punctures(pts)


def make_thin_bridge(outer_rect=(2.0, 1.5), inner_rect=(1.0, 0.9), eps: float = 0.1) -> PlanarDomain:
    """Rectangle minus a rectangle whose right side is eps from the outer right side.

    The inner rectangle is vertically centred; every other gap must exceed
    eps so that the bridge is the unique thin part.
    """
    W, H = map(float, outer_rect)
    w, h = map(float, inner_rect)
    if not (eps > 0 and w > 0 and h > 0):
        raise ValueError("sizes and gap must be positive")
    left = W - eps - w
    vert = 0.5 * (H - h)
    if left <= eps or vert <= eps:
        raise ValueError("inner rectangle does not fit with a unique eps-gap")
    hole = rectangle(left, vert, W - eps, vert + h)
    return PlanarDomain(rectangle(0.0, 0.0, W, H), (hole,))


GENERATORS = {
    "disk": lambda a: make_disk(float(a.get("radius", 1.0))),
    "annulus": lambda a: make_annulus(float(a.get("r1", 0.5)), float(a.get("r2", 1.0))),
    "piece": lambda a: make_fundamental_piece(int(a.get("k", 2))),
    "omega-k": lambda a: make_omega_k(int(a.get("k", 2))),
    "thin-bridge": lambda a: make_thin_bridge(
        (float(a.get("width", 2.0)), float(a.get("height", 1.5))),
        (float(a.get("inner_width", 1.0)), float(a.get("inner_height", 0.9))),
        float(a.get("eps", 0.1)),
    ),
}
