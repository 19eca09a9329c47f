"""Admissible cuts: segments whose removal leaves Omega simply connected."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Curve, Point2, PlanarDomain, Polygon, Segment, _segments_intersect

CURVE_SAMPLES = 2048
TOUCH_TOL = 1e-9


@dataclass(frozen=True)
class CutSet:
    segments: tuple = ()

    def __post_init__(self):
        segs = tuple(s if isinstance(s, Segment) else Segment(*s) for s in self.segments)
        object.__setattr__(self, "segments", segs)

    @property
    def lengths(self) -> tuple:
        return tuple(s.length for s in self.segments)

    @property
    def total(self) -> float:
        return float(math.fsum(self.lengths))

    def __len__(self):
        return len(self.segments)

    def scaled(self, t: float) -> "CutSet":
        return CutSet(tuple(Segment((s.a.x * t, s.a.y * t), (s.b.x * t, s.b.y * t)) for s in self.segments))

    def to_dict(self) -> dict:
        return {
            "segments": [[[s.a.x, s.a.y], [s.b.x, s.b.y]] for s in self.segments],
            "total": self.total,
        }


def cutset_from_dict(d: dict) -> CutSet:
    return CutSet(tuple(Segment(tuple(a), tuple(b)) for a, b in d["segments"]))


class CutError(ValueError):
    pass


# ---------------------------------------------------------------------------
# admissibility
# ---------------------------------------------------------------------------


def _scale(domain: PlanarDomain) -> float:
    x0, y0, x1, y1 = domain.bbox()
    return max(x1 - x0, y1 - y0)


def _component_distance(comp, pts: np.ndarray) -> np.ndarray:
    if isinstance(comp, Curve):
        return comp.distance(pts)
    return np.hypot(pts[:, 0] - comp.x, pts[:, 1] - comp.y)


def touched_component(domain: PlanarDomain, p) -> int | None:
    """Index (outer=0, holes, punctures) of the component the point lies on."""
    pt = np.asarray(p, dtype=float).reshape(1, 2)
    tol = TOUCH_TOL * _scale(domain)
    dists = [float(_component_distance(c, pt)[0]) for c in domain.components()]
    i = int(np.argmin(dists))
    return i if dists[i] <= tol else None


def _polygon_edges(domain: PlanarDomain):
    ends = [c.edges() for c in (domain.outer, *domain.holes) if isinstance(c, Polygon)]
    if not ends:
        return np.zeros((0, 2)), np.zeros((0, 2))
    return np.concatenate([e[0] for e in ends]), np.concatenate([e[1] for e in ends])


def _crosses_any(a, b, P, Q) -> bool:
    """Proper crossing of segment ab with any edge PQ (vectorised)."""
    if len(P) == 0:
        return False

    def orient(u, v, w):
        return (v[..., 0] - u[..., 0]) * (w[..., 1] - u[..., 1]) - (v[..., 1] - u[..., 1]) * (w[..., 0] - u[..., 0])

    d1, d2 = orient(P, Q, a), orient(P, Q, b)
    d3, d4 = orient(a, b, P), orient(a, b, Q)
    ext = np.maximum(np.linalg.norm(b - a), np.linalg.norm(Q - P, axis=1))
    eps = 1e-12 * ext * ext
    s1 = ((d1 > eps) & (d2 < -eps)) | ((d1 < -eps) & (d2 > eps))
    s2 = ((d3 > eps) & (d4 < -eps)) | ((d3 < -eps) & (d4 > eps))
    return bool(np.any(s1 & s2))


def segment_in_domain(domain: PlanarDomain, a, b, samples: int = 4001) -> bool:
    """Open segment ab inside Omega (punctures excluded).

    Polygon edges are tested exactly for proper crossings; curved
    components by dense sampling of the segment.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    L = float(np.linalg.norm(b - a))
    if _crosses_any(a, b, *_polygon_edges(domain)):
        return False
    tol = TOUCH_TOL * _scale(domain)
    for q in domain.punctures:
        qa = np.asarray(q)
        if min(np.linalg.norm(qa - a), np.linalg.norm(qa - b)) <= tol:
            continue
        t = np.clip((qa - a) @ (b - a) / (L * L), 0, 1)
        if np.linalg.norm(a + t * (b - a) - qa) <= tol:
            return False
    curved = not all(isinstance(c, Polygon) for c in (domain.outer, *domain.holes))
    t = np.linspace(0.0, 1.0, samples if curved else 9)
    pts = a + t[:, None] * (b - a)
    inner = pts[(t * L > tol) & ((1 - t) * L > tol)]
    if len(inner) == 0:
        return True
    ok = domain.outer.contains(inner) | (domain.outer.distance(inner) <= tol)
    lo, hi = np.minimum(a, b) - tol, np.maximum(a, b) + tol
    for h in domain.holes:
        x0, y0, x1, y1 = h.bbox()
        if x0 > hi[0] or x1 < lo[0] or y0 > hi[1] or y1 < lo[1]:
            continue
        ok &= h.signed_distance(inner) > -tol
    return bool(ok.all())


def _segments_conflict(s: Segment, t: Segment, tol: float) -> bool:
    """True if two cut segments meet anywhere other than a shared endpoint."""
    ends_s = [np.asarray(s.a), np.asarray(s.b)]
    ends_t = [np.asarray(t.a), np.asarray(t.b)]
    shared = [(i, j) for i in range(2) for j in range(2) if np.linalg.norm(ends_s[i] - ends_t[j]) <= tol]
    if not _segments_intersect(s.a, s.b, t.a, t.b):
        return False
    if not shared:
        return True
    if len(shared) == 2:
        return True  # coincident segments
    # touching at one shared endpoint only: conflict if collinear and overlapping
    i, j = shared[0]
    u = ends_s[1 - i] - ends_s[i]
    v = ends_t[1 - j] - ends_t[j]
    cr = u[0] * v[1] - u[1] * v[0]
    return abs(cr) <= 1e-12 * np.linalg.norm(u) * np.linalg.norm(v) and u @ v > 0


def check_cut(domain: PlanarDomain, cuts: CutSet) -> tuple[bool, str]:
    """Admissibility with a reason string.  Raises CutError on invalid geometry."""
    n_nodes = 1 + domain.n_holes
    tol = TOUCH_TOL * _scale(domain)
    ends = []
    for k, s in enumerate(cuts.segments):
        i, j = touched_component(domain, s.a), touched_component(domain, s.b)
        if i is None or j is None:
            raise CutError(f"segment {k}: endpoint touches no boundary component")
        if not segment_in_domain(domain, s.a, s.b):
            raise CutError(f"segment {k} exits the domain")
        ends.append((i, j))
    for k in range(len(cuts)):
        for m in range(k):
            if _segments_conflict(cuts.segments[k], cuts.segments[m], tol):
                return False, f"segments {m} and {k} cross"
    if len(ends) != n_nodes - 1:
        return False, f"{len(ends)} segments for {n_nodes} boundary components"
    parent = list(range(n_nodes))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in ends:
        ri, rj = find(i), find(j)
        if ri == rj:
            return False, "segments form a cycle on the boundary components"
        parent[ri] = rj
    return True, "spanning tree"


def is_admissible(domain: PlanarDomain, cuts: CutSet) -> bool:
    return check_cut(domain, cuts)[0]


# ---------------------------------------------------------------------------
# closest connecting segments
# ---------------------------------------------------------------------------


def _poly_pair_candidates(A: Polygon, B: Polygon, tol: float):
    """All vertex-to-edge closest pairs between two polygons, sorted by length."""
    out_d, out_a, out_b = [], [], []
    for P, Q, flip in ((A, B, False), (B, A, True)):
        qa, qb = Q.edges()
        v = P.array
        ab = qb - qa
        L2 = np.sum(ab * ab, axis=1)
        t = np.clip(np.einsum("vek,ek->ve", v[:, None, :] - qa[None], ab) / L2, 0, 1)
        proj = qa[None] + t[..., None] * ab[None]
        vv = np.broadcast_to(v[:, None, :], proj.shape)
        d = np.linalg.norm(proj - vv, axis=2)
        out_d.append(d.ravel())
        pa, pb = (proj, vv) if flip else (vv, proj)
        out_a.append(pa.reshape(-1, 2))
        out_b.append(pb.reshape(-1, 2))
    d = np.concatenate(out_d)
    a = np.concatenate(out_a)
    b = np.concatenate(out_b)
    order = np.argsort(d, kind="stable")[:64]
    cands = [(float(d[i]), a[i].copy(), b[i].copy()) for i in order]
    return _merge_ties(cands, tol)


def _merge_ties(cands, tol):
    """Collapse the tied shortest pairs; parallel ties become their average."""
    if not cands:
        return cands
    best = cands[0][0]
    tied = [c for c in cands if c[0] <= best + tol]
    rest = [c for c in cands if c[0] > best + tol]
    if len(tied) > 1 and best > 0:
        dirs = np.array([(c[2] - c[1]) / c[0] for c in tied])
        if np.all(np.linalg.norm(dirs - dirs[0], axis=1) <= 1e-9):
            a = np.mean([c[1] for c in tied], axis=0)
            b = np.mean([c[2] for c in tied], axis=0)
            tied = [(float(np.linalg.norm(b - a)), a, b)]
    out = [tied[0]]
    for c in rest:
        if all(np.linalg.norm(c[1] - o[1]) + np.linalg.norm(c[2] - o[2]) > tol for o in out):
            out.append(c)
        if len(out) >= 6:
            break
    return out


def _project(comp, pts):
    if isinstance(comp, Curve):
        return comp.project(pts)
    return np.broadcast_to(np.asarray(comp, dtype=float), np.asarray(pts).shape).copy()


def _sampled_pair_candidates(A, B, tol, n=CURVE_SAMPLES):
    def samp(c):
        if isinstance(c, Curve):
            return c.sample(n)
        return np.asarray(c, dtype=float).reshape(1, 2)

    SA, SB = samp(A), samp(B)
    D = (np.sum(SA * SA, axis=1)[:, None] + np.sum(SB * SB, axis=1)[None, :]) - 2.0 * SA @ SB.T
    flat = D.ravel()
    top = min(64, flat.size)
    sel = np.argpartition(flat, top - 1)[:top] if flat.size > top else np.arange(flat.size)
    sel = np.sort(sel)
    sel = sel[np.argsort(flat[sel], kind="stable")]
    i, j = np.unravel_index(sel, D.shape)
    a, b = SA[i].copy(), SB[j].copy()
    active = np.ones(len(a), dtype=bool)
    for _ in range(200):  # alternating projection, all candidates at once
        a_new = _project(A, b[active])
        b_new = _project(B, a_new)
        moved = np.linalg.norm(a_new - a[active], axis=1) + np.linalg.norm(b_new - b[active], axis=1)
        a[active], b[active] = a_new, b_new
        idx = np.flatnonzero(active)
        active[idx[moved < 1e-14]] = False
        if not active.any():
            break
    cands = []
    for ak, bk in zip(a, b):
        d = float(np.linalg.norm(bk - ak))
        if all(np.linalg.norm(ak - c[1]) + np.linalg.norm(bk - c[2]) > 1e-8 for c in cands):
            cands.append((d, ak, bk))
    cands.sort(key=lambda c: c[0])
    return cands[:6]


def closest_segments(A, B, tol: float):
    """Candidate shortest segments from component A to component B."""
    if isinstance(A, Polygon) and isinstance(B, Polygon):
        return _poly_pair_candidates(A, B, tol)
    return _sampled_pair_candidates(A, B, tol)


def heuristic_min_cut(domain: PlanarDomain) -> CutSet:
    """Kruskal spanning tree on boundary components with closest-segment weights.

    Candidates that leave Omega or cross an accepted segment are skipped in
    favour of the next-shortest ones.  The result is admissible and its total
    is an upper estimate of h(Omega).
    """
    comps = domain.components()
    n = len(comps)
    if n < 2:
        raise ValueError("domain is simply connected: nothing to cut")
    scale = _scale(domain)
    tol = 1e-12 * scale
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            for d, a, b in closest_segments(comps[i], comps[j], tol):
                if d > 0:
                    edges.append((d, i, j, a, b))
    edges.sort(key=lambda e: (round(e[0] / scale, 12), e[1], e[2]))
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = []
    for d, i, j, a, b in edges:
        ri, rj = find(i), find(j)
        if ri == rj:
            continue
        seg = Segment(tuple(a), tuple(b))
        if not segment_in_domain(domain, a, b):
            continue
        if any(_segments_conflict(seg, s, TOUCH_TOL * scale) for s in chosen):
            continue
        chosen.append(seg)
        parent[ri] = rj
        if len(chosen) == n - 1:
            break
    if len(chosen) != n - 1:
        raise RuntimeError("no admissible cut found")
    return CutSet(tuple(chosen))


def omega_k_reference_cut(k: int) -> CutSet:
    """Explicit cut of the k x k family: vertical links in every column.

    Per column, k-1 segments of length 2/k^{5/2} join stacked holes and one of
    length 1/k^{5/2} joins the bottom hole to the outer square.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    side = 4.0 / k
    g = k**-2.5
    segs = []
    for c in range(k):
        x = -2.0 + (c + 0.5) * side
        segs.append(Segment((x, 0.0), (x, g)))
        for r in range(1, k):
            y = r * side
            segs.append(Segment((x, y - g), (x, y + g)))
    return CutSet(tuple(segs))
