"""Maximal nets, Voronoi partitions of convex domains, and the good-ball search."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import Circle, Point2, PlanarDomain, Polygon, area as domain_area, interior_ball_radius

NET_TOL = 1e-12
CONIC_VERTICES = 8192


# ---------------------------------------------------------------------------
# nets
# ---------------------------------------------------------------------------


class _SpatialHash:
    def __init__(self, cell: float):
        self.cell = cell
        self.buckets: dict = {}

    def _key(self, p):
        return (int(math.floor(p[0] / self.cell)), int(math.floor(p[1] / self.cell)))

    def add(self, p):
        self.buckets.setdefault(self._key(p), []).append(p)

    def min_dist(self, p) -> float:
        kx, ky = self._key(p)
        best = math.inf
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for q in self.buckets.get((kx + dx, ky + dy), ()):
                    d = math.hypot(p[0] - q[0], p[1] - q[1])
                    if d < best:
                        best = d
        return best


def greedy_separated(candidates, sep: float, order: str = "raster", seed: int = 42) -> np.ndarray:
    """Greedy maximal subset of ``candidates`` with pairwise distances >= sep.

    ``order`` is "raster" (as given) or "random" (seeded permutation).
    """
    cand = np.asarray(candidates, dtype=float).reshape(-1, 2)
    if order == "random":
        cand = cand[np.random.default_rng(seed).permutation(len(cand))]
    elif order != "raster":
        raise ValueError(f"unknown order {order!r}")
    grid = _SpatialHash(sep)
    chosen = []
    for p in map(tuple, cand):
        if grid.min_dist(p) >= sep - NET_TOL:
            grid.add(p)
            chosen.append(p)
    return np.asarray(chosen, dtype=float).reshape(-1, 2)


def probe_lattice(domain: PlanarDomain, probe: float) -> np.ndarray:
    """Square lattice of spacing ``probe`` anchored at the outer centroid, raster ordered."""
    cx, cy = domain.outer.centroid()
    x0, y0, x1, y1 = domain.bbox()
    i0, i1 = math.floor((x0 - cx) / probe), math.ceil((x1 - cx) / probe)
    j0, j1 = math.floor((y0 - cy) / probe), math.ceil((y1 - cy) / probe)
    xs = cx + np.arange(i0, i1 + 1) * probe
    ys = cy + np.arange(j0, j1 + 1) * probe
    Y, X = np.meshgrid(ys, xs, indexing="ij")  # rows of constant y, x fastest
    return np.column_stack([X.ravel(), Y.ravel()])


@dataclass(frozen=True, eq=False)
class EpsNet:
    epsilon: float
    points: np.ndarray = field(repr=False)
    probe: float = 0.0

    def __len__(self):
        return len(self.points)

    def to_dict(self) -> dict:
        return {"epsilon": self.epsilon, "points": [[float(x), float(y)] for x, y in self.points]}


def _admissible(domain: PlanarDomain, pts: np.ndarray, margin: float) -> np.ndarray:
    ok = domain.contains(pts, include_punctures=False)
    if margin > 0:
        ok &= domain.boundary_distance(pts) >= margin - NET_TOL
    return ok


def maximal_eps_net(domain: PlanarDomain, epsilon: float, probe: float | None = None,
                    order: str = "raster", seed: int = 42) -> EpsNet:
    """Points pairwise >= epsilon apart and >= epsilon from the boundary.

    Maximal with respect to the probe lattice: every admissible probe point
    lies within epsilon of the net.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if probe is None:
        probe = epsilon / 10
    if probe > epsilon / 10 * (1 + 1e-12):
        raise ValueError("probe spacing must be at most epsilon/10")
    cand = probe_lattice(domain, probe)
    cand = cand[_admissible(domain, cand, epsilon)]
    pts = greedy_separated(cand, epsilon, order, seed)
    if len(pts) == 0:
        raise ValueError("empty net: epsilon too large for the domain")
    pts.setflags(write=False)
    return EpsNet(float(epsilon), pts, float(probe))


def is_maximal_on_probe(domain: PlanarDomain, net: EpsNet, margin: float | None = None) -> bool:
    """Property P / maximality: no admissible probe point is >= epsilon from the net."""
    margin = net.epsilon if margin is None else margin
    cand = probe_lattice(domain, net.probe)
    cand = cand[_admissible(domain, cand, margin)]
    return bool(np.all(_nearest_distance(cand, net.points) < net.epsilon))


def _nearest_distance(pts: np.ndarray, centers: np.ndarray) -> np.ndarray:
    best = np.full(len(pts), np.inf)
    for c in centers:
        best = np.minimum(best, np.hypot(pts[:, 0] - c[0], pts[:, 1] - c[1]))
    return best


def net_is_valid(domain: PlanarDomain, net: EpsNet) -> bool:
    p = net.points
    if len(p) > 1:
        d = np.linalg.norm(p[:, None] - p[None], axis=2)
        np.fill_diagonal(d, np.inf)
        if d.min() < net.epsilon - NET_TOL:
            return False
    return bool(np.all(_admissible(domain, p, net.epsilon)))


# ---------------------------------------------------------------------------
# Voronoi partition
# ---------------------------------------------------------------------------


def _clip(poly: np.ndarray, n: np.ndarray, c: float) -> np.ndarray:
    """Sutherland-Hodgman clip of a convex polygon to {x : n.x <= c}."""
    if len(poly) == 0:
        return poly
    s = poly @ n - c
    inside = s <= 0
    if inside.all():
        return poly
    if not inside.any():
        return poly[:0]
    sj = np.roll(s, -1)
    pj = np.roll(poly, -1, axis=0)
    cross = inside != np.roll(inside, -1)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(cross, s / (s - sj), 0.0)
    # per source vertex: [kept vertex, edge crossing], flattened in order
    cand = np.stack([poly, poly + t[:, None] * (pj - poly)], axis=1).reshape(-1, 2)
    keep = np.stack([inside, cross], axis=1).ravel()
    return cand[keep]


def _polygon_area(poly: np.ndarray) -> float:
    if len(poly) < 3:
        return 0.0
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def domain_polygon(domain: PlanarDomain, n: int = CONIC_VERTICES) -> np.ndarray:
    """Counterclockwise polygon inscribed in the outer curve."""
    if isinstance(domain.outer, Polygon):
        return np.asarray(domain.outer.array)
    return domain.outer.polygon(n).array


@dataclass(frozen=True, eq=False)
class VoronoiPartition:
    cells: tuple  # convex polygons (k_j, 2), counterclockwise
    owners: np.ndarray = field(repr=False)
    sagitta: float = 0.0  # max gap between the polygonal and the true outer boundary

    def areas(self) -> np.ndarray:
        return np.array([_polygon_area(c) for c in self.cells])

    def assign(self, pts) -> np.ndarray:
        """Owning cell of each point; ties go to the lowest index."""
        pts = np.asarray(pts, dtype=float).reshape(-1, 2)
        d = np.linalg.norm(pts[:, None, :] - self.owners[None], axis=2)
        return np.argmin(d, axis=1)


def voronoi_partition(domain: PlanarDomain, net: EpsNet, n_vertices: int = CONIC_VERTICES) -> VoronoiPartition:
    """Cells Omega ∩ H_jk by successive half-plane clipping of the domain polygon."""
    if domain.holes or not domain.outer.is_convex():
        raise ValueError("Voronoi partition needs a convex domain without holes")
    base = domain_polygon(domain, n_vertices)
    mids = 0.5 * (base + np.roll(base, -1, axis=0))
    sag = 0.0 if isinstance(domain.outer, Polygon) else float(np.max(domain.outer.distance(mids)))
    P = np.asarray(net.points, dtype=float)
    cells = []
    for j, p in enumerate(P):
        others = np.delete(np.arange(len(P)), j)
        dist = np.linalg.norm(P[others] - p, axis=1)
        cell = base
        reach = float(np.max(np.linalg.norm(cell - p, axis=1)))
        for k in others[np.argsort(dist, kind="stable")]:
            q = P[k]
            d = float(np.linalg.norm(q - p))
            if d / 2 > reach:
                break
            nrm = q - p
            cell = _clip(cell, nrm, float(nrm @ (0.5 * (p + q))))
            if len(cell) == 0:
                break
            reach = float(np.max(np.linalg.norm(cell - p, axis=1)))
        if len(cell) < 3 or _polygon_area(cell) <= 0:
            raise ValueError(f"degenerate Voronoi cell for net point {j}")
        cells.append(cell)
    return VoronoiPartition(tuple(cells), P, sag)


@dataclass(frozen=True)
class InclusionReport:
    inner: tuple  # per cell: B(p_j, eps/2) inside Omega_j
    outer: tuple  # per cell: Omega_j inside B(p_j, 2 eps)
    inner_margin: tuple
    outer_margin: tuple
    precondition_met: bool  # delta > eps
    passed: bool


def _point_segment_min(p, poly):
    a = poly
    b = np.roll(poly, -1, axis=0)
    ab = b - a
    L2 = np.maximum(np.sum(ab * ab, axis=1), 1e-300)
    t = np.clip(np.sum((p - a) * ab, axis=1) / L2, 0, 1)
    q = a + t[:, None] * ab
    return float(np.min(np.linalg.norm(q - p, axis=1)))


def verify_partition_inclusions(partition: VoronoiPartition, net: EpsNet,
                                domain: PlanarDomain | None = None, tol: float = 1e-9) -> InclusionReport:
    """Check B(p_j, eps/2) ⊆ Omega_j ⊆ B(p_j, 2 eps) for every cell.

    The polygonal cells lie inside the true ones, so the inner test is
    conservative; the outer test adds the boundary sagitta.
    """
    eps = net.epsilon
    inner, outer, mi, mo = [], [], [], []
    for p, cell in zip(partition.owners, partition.cells):
        r_in = _point_segment_min(p, cell)
        r_out = float(np.max(np.linalg.norm(cell - p, axis=1))) + partition.sagitta
        mi.append(r_in - eps / 2)
        mo.append(2 * eps - r_out)
        inner.append(r_in >= eps / 2 - tol)
        outer.append(r_out <= 2 * eps + tol)
    pre = True if domain is None else interior_ball_radius(domain) > eps
    return InclusionReport(tuple(inner), tuple(outer), tuple(mi), tuple(mo), bool(pre),
                           bool(all(inner) and all(outer)))


# ---------------------------------------------------------------------------
# good ball
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GoodBall:
    center: Point2
    radius: float
    ratio: float


def ball_area(domain: PlanarDomain, p, rho: float, spacing: float | None = None,
              method: str = "raster", samples: int = 10**6, seed: int = 42) -> float:
    """|B(p, rho) ∩ Omega| by raster counting or Monte Carlo."""
    if method == "raster":
        s = spacing if spacing is not None else rho / 400
        m = int(math.ceil(rho / s))
        t = (np.arange(-m, m) + 0.5) * s
        X, Y = np.meshgrid(p[0] + t, p[1] + t, indexing="ij")
        pts = np.column_stack([X.ravel(), Y.ravel()])
        pts = pts[np.hypot(pts[:, 0] - p[0], pts[:, 1] - p[1]) < rho]
        return float(np.count_nonzero(domain.contains(pts, include_punctures=False))) * s * s
    if method == "mc":
        rng = np.random.default_rng(seed)
        rad = rho * np.sqrt(rng.random(samples))
        ang = 2 * np.pi * rng.random(samples)
        pts = np.column_stack([p[0] + rad * np.cos(ang), p[1] + rad * np.sin(ang)])
        return math.pi * rho**2 * float(np.mean(domain.contains(pts, include_punctures=False)))
    raise ValueError(f"unknown method {method!r}")


def ball_area_ratio(domain: PlanarDomain, p, r: float, method: str = "raster") -> float:
    s = r / 200
    return ball_area(domain, p, 2 * r, s, method) / ball_area(domain, p, r, s, method)


def good_ball_radius(area: float, n: int) -> float:
    return math.sqrt(area / n) / (4 * math.sqrt(math.pi))


def good_ball(domain: PlanarDomain, poles, threshold: float = 34.0) -> GoodBall:
    """First point of a maximal r-net of Omega minus the 2r-balls at the poles with ratio <= 34."""
    poles = np.asarray(poles, dtype=float).reshape(-1, 2)
    n = len(poles)
    if n < 1:
        raise ValueError("need at least one pole")
    r = good_ball_radius(domain_area(domain), n)
    cand = probe_lattice(domain, r / 10)
    ok = domain.contains(cand, include_punctures=False)
    if n:
        ok &= _nearest_distance(cand, poles) >= 2 * r
    net = greedy_separated(cand[ok], r)
    for q in net:
        ratio = ball_area_ratio(domain, q, r)
        if ratio <= threshold:
            return GoodBall(Point2(float(q[0]), float(q[1])), r, ratio)
    raise RuntimeError("no good ball found at this sampling resolution")


def packing_count_bounds(a: float, b: float) -> tuple[float, float]:
    if not a > b > 0:
        raise ValueError("need a > b > 0")
    return (a / b) ** 2, ((2 * a + b) / b) ** 2


def ball_packing_net(a: float, b: float, seed: int = 42, probe: float | None = None) -> np.ndarray:
    """A random-order maximal b-separated set in the closed ball of radius a."""
    probe = b / 20 if probe is None else probe
    m = int(math.ceil(a / probe))
    t = np.arange(-m, m + 1) * probe
    X, Y = np.meshgrid(t, t, indexing="ij")
    pts = np.column_stack([X.ravel(), Y.ravel()])
    pts = pts[np.hypot(pts[:, 0], pts[:, 1]) <= a + NET_TOL]
    return greedy_separated(pts, b, order="random", seed=seed)
