"""Planar geometry for domains with holes.

Boundary curves are parametric primitives (circle, axis-aligned ellipse,
polygon, axis-aligned rounded rectangle).  Every primitive supports
vectorised containment, distance, projection and ray casting, which is all
the solver grid, the nets and the cut heuristics need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence, Union

import numpy as np
from scipy import integrate

# on-boundary points (within this distance) are classified as outside
BOUNDARY_TOL = 1e-12


class Point2(NamedTuple):
    x: float
    y: float


def _as_points(pts) -> np.ndarray:
    arr = np.asarray(pts, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, 2)
    return arr


def _golden_extremum(fun, lo: float, hi: float, maximize: bool, iters: int = 90):
    """Golden-section search on [lo, hi]; returns (x, f(x))."""
    sign = -1.0 if maximize else 1.0
    g = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - g * (b - a)
    d = a + g * (b - a)
    fc, fd = sign * fun(c), sign * fun(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = sign * fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = sign * fun(d)
        if b - a < 1e-16:
            break
    x = 0.5 * (a + b)
    return x, fun(x)


# ---------------------------------------------------------------------------
# curve primitives
# ---------------------------------------------------------------------------


class Curve:
    """Shared behaviour of closed boundary curves."""

    kind = "curve"

    def contains(self, pts) -> np.ndarray:
        """Strict interior test; points within BOUNDARY_TOL count as outside."""
        return self.signed_distance(pts) < -BOUNDARY_TOL

    def distance(self, pts) -> np.ndarray:
        return np.abs(self.signed_distance(pts))

    def sample(self, n: int) -> np.ndarray:
        s = np.arange(n) / n
        return self.boundary(s)[0]

    def polygon(self, n: int = 1024) -> "Polygon":
        return Polygon(tuple(map(tuple, self.sample(n))))

    def first_hit(self, origins, dirs) -> np.ndarray:
        """Distance along each ray to the first crossing of the curve.

        Generic sphere tracing on the signed distance; exact subclasses
        override it.  Rays that never cross return inf.
        """
        o = _as_points(origins)
        d = _as_points(dirs)
        d = d / np.linalg.norm(d, axis=1, keepdims=True)
        o, d = np.broadcast_arrays(o, d)
        scale = self.diameter()
        t = np.zeros(len(o))
        s0 = np.sign(self.signed_distance(o))
        s0[s0 == 0] = -1.0
        done = np.zeros(len(o), dtype=bool)
        for _ in range(4000):
            sd = self.signed_distance(o + t[:, None] * d)
            cross = (np.sign(sd) != s0) | (np.abs(sd) < 1e-15 * scale)
            done |= cross
            if done.all():
                break
            step = np.maximum(np.abs(sd), 1e-13 * scale)
            t = np.where(done, t, t + step)
            if np.all(done | (t > 4 * scale)):
                break
        out = np.where(done, t, np.inf)
        return out

    def interior_radius(self) -> float:
        """Radius of the largest disk rolling inside along the curve (0 at corners)."""
        raise NotImplementedError

    def is_convex(self) -> bool:
        return True

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Circle(Curve):
    center: Point2
    radius: float
    kind = "circle"

    def __post_init__(self):
        object.__setattr__(self, "center", Point2(*map(float, self.center)))
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError(f"circle radius must be positive, got {self.radius}")

    def area(self) -> float:
        return math.pi * self.radius**2

    def perimeter(self) -> float:
        return 2 * math.pi * self.radius

    def diameter(self) -> float:
        return 2 * self.radius

    def centroid(self) -> Point2:
        return self.center

    def bbox(self):
        cx, cy = self.center
        r = self.radius
        return (cx - r, cy - r, cx + r, cy + r)

    def signed_distance(self, pts) -> np.ndarray:
        p = _as_points(pts)
        return np.hypot(p[:, 0] - self.center.x, p[:, 1] - self.center.y) - self.radius

    def project(self, pts) -> np.ndarray:
        p = _as_points(pts)
        c = np.asarray(self.center)
        v = p - c
        r = np.linalg.norm(v, axis=1, keepdims=True)
        v = np.where(r > 0, v / np.where(r > 0, r, 1.0), np.array([1.0, 0.0]))
        return c + self.radius * v

    def boundary(self, s):
        th = 2 * np.pi * np.asarray(s, dtype=float)
        n = np.column_stack([np.cos(th), np.sin(th)])
        return np.asarray(self.center) + self.radius * n, n

    def first_hit(self, origins, dirs) -> np.ndarray:
        o = _as_points(origins) - np.asarray(self.center)
        d = _as_points(dirs)
        d = d / np.linalg.norm(d, axis=1, keepdims=True)
        o, d = np.broadcast_arrays(o, d)
        b = np.sum(o * d, axis=1)
        c = np.sum(o * o, axis=1) - self.radius**2
        disc = b * b - c
        sq = np.sqrt(np.maximum(disc, 0.0))
        t1, t2 = -b - sq, -b + sq
        eps = 1e-12 * self.radius
        t = np.where(t1 > eps, t1, np.where(t2 > eps, t2, np.inf))
        return np.where(disc >= 0, t, np.inf)

    def interior_radius(self) -> float:
        return self.radius

    def scaled(self, t: float) -> "Circle":
        return Circle(Point2(self.center.x * t, self.center.y * t), self.radius * t)

    def translated(self, dx: float, dy: float) -> "Circle":
        return Circle(Point2(self.center.x + dx, self.center.y + dy), self.radius)

    def to_dict(self) -> dict:
        return {"kind": "circle", "center": list(self.center), "radius": self.radius}


@dataclass(frozen=True)
class Ellipse(Curve):
    """Axis-aligned ellipse with semi-axes (a, b) along x and y."""

    center: Point2
    semi_axes: tuple[float, float]
    kind = "ellipse"

    def __post_init__(self):
        object.__setattr__(self, "center", Point2(*map(float, self.center)))
        a, b = map(float, self.semi_axes)
        if not (a > 0 and b > 0):
            raise ValueError(f"ellipse semi-axes must be positive, got {self.semi_axes}")
        object.__setattr__(self, "semi_axes", (a, b))

    def area(self) -> float:
        a, b = self.semi_axes
        return math.pi * a * b

    def perimeter(self) -> float:
        a, b = self.semi_axes
        val, _ = integrate.quad(
            lambda t: math.hypot(a * math.sin(t), b * math.cos(t)),
            0.0, 2 * math.pi, epsabs=0.0, epsrel=1e-13, limit=200,
        )
        return val

    def diameter(self) -> float:
        return 2 * max(self.semi_axes)

    def centroid(self) -> Point2:
        return self.center

    def bbox(self):
        cx, cy = self.center
        a, b = self.semi_axes
        return (cx - a, cy - b, cx + a, cy + b)

    def _closest_t(self, p: np.ndarray) -> np.ndarray:
        a, b = self.semi_axes
        x = p[:, 0] - self.center.x
        y = p[:, 1] - self.center.y
        best_t = np.zeros(len(p))
        best_d = np.full(len(p), np.inf)
        base = np.arctan2(a * y, b * x)
        for shift in (0.0, 0.5 * np.pi, np.pi, 1.5 * np.pi):
            t = base + shift
            for _ in range(40):
                ct, st = np.cos(t), np.sin(t)
                g = (a * a - b * b) * st * ct - a * x * st + b * y * ct
                gp = (a * a - b * b) * (ct * ct - st * st) - a * x * ct - b * y * st
                step = np.where(np.abs(gp) > 1e-300, g / np.where(gp == 0, 1.0, gp), 0.0)
                t = t - np.clip(step, -0.5, 0.5)
            d = np.hypot(a * np.cos(t) - x, b * np.sin(t) - y)
            better = d < best_d
            best_t = np.where(better, t, best_t)
            best_d = np.where(better, d, best_d)
        return best_t

    def project(self, pts) -> np.ndarray:
        p = _as_points(pts)
        a, b = self.semi_axes
        t = self._closest_t(p)
        return np.column_stack([self.center.x + a * np.cos(t), self.center.y + b * np.sin(t)])

    def signed_distance(self, pts) -> np.ndarray:
        p = _as_points(pts)
        a, b = self.semi_axes
        d = np.linalg.norm(p - self.project(p), axis=1)
        g = ((p[:, 0] - self.center.x) / a) ** 2 + ((p[:, 1] - self.center.y) / b) ** 2
        return np.where(g < 1.0, -d, d)

    def boundary(self, s):
        a, b = self.semi_axes
        t = 2 * np.pi * np.asarray(s, dtype=float)
        pts = np.column_stack([self.center.x + a * np.cos(t), self.center.y + b * np.sin(t)])
        n = np.column_stack([np.cos(t) / a, np.sin(t) / b])
        n /= np.linalg.norm(n, axis=1, keepdims=True)
        return pts, n

    def first_hit(self, origins, dirs) -> np.ndarray:
        a, b = self.semi_axes
        o = _as_points(origins) - np.asarray(self.center)
        d = _as_points(dirs)
        d = d / np.linalg.norm(d, axis=1, keepdims=True)
        o, d = np.broadcast_arrays(o, d)
        os_ = o / np.array([a, b])
        ds = d / np.array([a, b])
        A = np.sum(ds * ds, axis=1)
        B = np.sum(os_ * ds, axis=1)
        C = np.sum(os_ * os_, axis=1) - 1.0
        disc = B * B - A * C
        sq = np.sqrt(np.maximum(disc, 0.0))
        t1, t2 = (-B - sq) / A, (-B + sq) / A
        eps = 1e-12 * max(a, b)
        t = np.where(t1 > eps, t1, np.where(t2 > eps, t2, np.inf))
        return np.where(disc >= 0, t, np.inf)

    def interior_radius(self) -> float:
        a, b = self.semi_axes
        return min(a, b) ** 2 / max(a, b)

    def scaled(self, t: float) -> "Ellipse":
        a, b = self.semi_axes
        return Ellipse(Point2(self.center.x * t, self.center.y * t), (a * t, b * t))

    def translated(self, dx: float, dy: float) -> "Ellipse":
        return Ellipse(Point2(self.center.x + dx, self.center.y + dy), self.semi_axes)

    def to_dict(self) -> dict:
        return {"kind": "ellipse", "center": list(self.center), "semi_axes": list(self.semi_axes)}


def _segments_intersect(p1, p2, q1, q2) -> bool:
    """Proper or touching intersection of closed segments p1p2 and q1q2."""
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1, d2 = orient(q1, q2, p1), orient(q1, q2, p2)
    d3, d4 = orient(p1, p2, q1), orient(p1, p2, q2)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0:
        return True

    def on_seg(a, b, c):
        return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])

    if d1 == 0 and on_seg(q1, q2, p1):
        return True
    if d2 == 0 and on_seg(q1, q2, p2):
        return True
    if d3 == 0 and on_seg(p1, p2, q1):
        return True
    if d4 == 0 and on_seg(p1, p2, q2):
        return True
    return False


def _segment_distance(pts: np.ndarray, a: np.ndarray, b: np.ndarray):
    """Distances from pts to segment ab and the closest points."""
    ab = b - a
    L2 = float(ab @ ab)
    if L2 == 0.0:
        proj = np.broadcast_to(a, pts.shape)
    else:
        t = np.clip(((pts - a) @ ab) / L2, 0.0, 1.0)
        proj = a + t[:, None] * ab
    return np.linalg.norm(pts - proj, axis=1), proj


class _Piecewise(Curve):
    """Curves made of straight edges joined by circular corner arcs.

    A polygon is the zero-radius case; its corner "arcs" degenerate to
    fans of normals at the vertices, weighted so that they still take up
    parameter length."""

    def _pieces(self):
        raise NotImplementedError

    def boundary(self, s):
        kinds, data, lengths = self._pieces()
        cum = np.concatenate([[0.0], np.cumsum(lengths)])
        u = (np.asarray(s, dtype=float) % 1.0) * cum[-1]
        idx = np.clip(np.searchsorted(cum, u, side="right") - 1, 0, len(lengths) - 1)
        frac = (u - cum[idx]) / np.where(lengths[idx] > 0, lengths[idx], 1.0)
        pts = np.empty((len(u), 2))
        nrm = np.empty((len(u), 2))
        for i, (k, dat) in enumerate(zip(kinds, data)):
            sel = idx == i
            if not sel.any():
                continue
            f = frac[sel]
            if k == "edge":
                p0, p1, n = dat
                pts[sel] = p0 + f[:, None] * (p1 - p0)
                nrm[sel] = n
            else:
                c, r, th0, th1 = dat
                th = th0 + f * (th1 - th0)
                nn = np.column_stack([np.cos(th), np.sin(th)])
                pts[sel] = c + r * nn
                nrm[sel] = nn
        return pts, nrm


@dataclass(frozen=True)
class Polygon(_Piecewise):
    vertices: tuple
    kind = "polygon"
    _arr: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        if not np.all(np.isfinite(v)):
            raise ValueError("polygon vertices must be finite")
        if np.allclose(v[0], v[-1]) and len(v) > 3:
            v = v[:-1]
        if _shoelace(v) < 0:
            v = v[::-1].copy()
        if abs(_shoelace(v)) == 0:
            raise ValueError("degenerate polygon")
        if len(v) <= 256 and not _is_simple(v):
            raise ValueError("polygon must be simple")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", tuple(Point2(*p) for p in v.tolist()))
        object.__setattr__(self, "_arr", v)

    @property
    def array(self) -> np.ndarray:
        return self._arr

    def edges(self):
        v = self._arr
        return v, np.roll(v, -1, axis=0)

    def area(self) -> float:
        return abs(_shoelace(self._arr))

    def perimeter(self) -> float:
        a, b = self.edges()
        return float(np.sum(np.linalg.norm(b - a, axis=1)))

    def diameter(self) -> float:
        return _rotating_calipers_diameter(self._arr)

    def centroid(self) -> Point2:
        v = self._arr
        w = np.roll(v, -1, axis=0)
        cr = v[:, 0] * w[:, 1] - w[:, 0] * v[:, 1]
        A = cr.sum() / 2
        cx = np.sum((v[:, 0] + w[:, 0]) * cr) / (6 * A)
        cy = np.sum((v[:, 1] + w[:, 1]) * cr) / (6 * A)
        return Point2(float(cx), float(cy))

    def bbox(self):
        v = self._arr
        return (float(v[:, 0].min()), float(v[:, 1].min()), float(v[:, 0].max()), float(v[:, 1].max()))

    def winding_number(self, pts) -> np.ndarray:
        """Integer winding number of the boundary around each point."""
        p = _as_points(pts)
        a, b = self.edges()
        wn = np.zeros(len(p), dtype=np.int64)
        for (ax, ay), (bx, by) in zip(a, b):
            cross = (bx - ax) * (p[:, 1] - ay) - (p[:, 0] - ax) * (by - ay)
            up = (ay <= p[:, 1]) & (by > p[:, 1]) & (cross > 0)
            down = (ay > p[:, 1]) & (by <= p[:, 1]) & (cross < 0)
            wn += up.astype(np.int64) - down.astype(np.int64)
        return wn

    def _dist_proj(self, p: np.ndarray):
        a, b = self.edges()
        best = np.full(len(p), np.inf)
        proj = np.zeros_like(p)
        for ai, bi in zip(a, b):
            d, q = _segment_distance(p, ai, bi)
            better = d < best
            best = np.where(better, d, best)
            proj[better] = q[better]
        return best, proj

    def signed_distance(self, pts) -> np.ndarray:
        p = _as_points(pts)
        d, _ = self._dist_proj(p)
        inside = self.winding_number(p) != 0
        return np.where(inside, -d, d)

    def contains(self, pts) -> np.ndarray:
        p = _as_points(pts)
        inside = self.winding_number(p) != 0
        if inside.any():
            d, _ = self._dist_proj(p[inside])
            inside[np.flatnonzero(inside)[d <= BOUNDARY_TOL]] = False
        return inside

    def project(self, pts) -> np.ndarray:
        return self._dist_proj(_as_points(pts))[1]

    def first_hit(self, origins, dirs) -> np.ndarray:
        o = _as_points(origins)
        d = _as_points(dirs)
        d = d / np.linalg.norm(d, axis=1, keepdims=True)
        o, d = np.broadcast_arrays(o, d)
        a, b = self.edges()
        best = np.full(len(o), np.inf)
        scale = self.diameter()
        for ai, bi in zip(a, b):
            e = bi - ai
            den = d[:, 0] * e[1] - d[:, 1] * e[0]
            w = ai - o
            ok = np.abs(den) > 1e-300
            safe = np.where(ok, den, 1.0)
            t = (w[:, 0] * e[1] - w[:, 1] * e[0]) / safe
            u = (w[:, 0] * d[:, 1] - w[:, 1] * d[:, 0]) / safe
            hit = ok & (t > 1e-12 * scale) & (u >= -1e-14) & (u <= 1 + 1e-14)
            best = np.where(hit & (t < best), t, best)
        return best

    def is_convex(self) -> bool:
        v = self._arr
        a = np.roll(v, -1, axis=0) - v
        b = np.roll(v, -2, axis=0) - np.roll(v, -1, axis=0)
        cr = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
        return bool(np.all(cr >= -1e-14 * np.abs(a).max() ** 2))

    def interior_radius(self) -> float:
        return 0.0

    def _pieces(self):
        v = self._arr
        nxt = np.roll(v, -1, axis=0)
        e = nxt - v
        lens = np.linalg.norm(e, axis=1)
        normals = np.column_stack([e[:, 1], -e[:, 0]]) / lens[:, None]
        ang = np.arctan2(normals[:, 1], normals[:, 0])
        weight = lens.sum() / (2 * np.pi)
        kinds, data, lengths = [], [], []
        for i in range(len(v)):
            kinds.append("edge")
            data.append((v[i], nxt[i], normals[i]))
            lengths.append(lens[i])
            j = (i + 1) % len(v)
            th0 = ang[i]
            dth = (ang[j] - th0 + np.pi) % (2 * np.pi) - np.pi
            if dth > 0:  # convex vertex: fan of normals at nxt[i]
                kinds.append("arc")
                data.append((nxt[i], 0.0, th0, th0 + dth))
                lengths.append(weight * dth)
        return kinds, data, np.asarray(lengths)

    def sample(self, n: int) -> np.ndarray:
        a, b = self.edges()
        lens = np.linalg.norm(b - a, axis=1)
        cum = np.concatenate([[0.0], np.cumsum(lens)])
        u = np.arange(n) / n * cum[-1]
        idx = np.clip(np.searchsorted(cum, u, side="right") - 1, 0, len(lens) - 1)
        f = (u - cum[idx]) / lens[idx]
        return a[idx] + f[:, None] * (b[idx] - a[idx])

    def polygon(self, n: int = 1024) -> "Polygon":
        return self

    def scaled(self, t: float) -> "Polygon":
        return Polygon(tuple(map(tuple, self._arr * t)))

    def translated(self, dx: float, dy: float) -> "Polygon":
        return Polygon(tuple(map(tuple, self._arr + np.array([dx, dy]))))

    def to_dict(self) -> dict:
        return {"kind": "polygon", "vertices": [list(p) for p in self.vertices]}


@dataclass(frozen=True)
class RoundedRect(_Piecewise):
    """Axis-aligned rectangle between two corner points with rounded corners."""

    corners: tuple
    radius: float
    kind = "rounded-rectangle"

    def __post_init__(self):
        (x0, y0), (x1, y1) = self.corners
        x0, x1 = sorted((float(x0), float(x1)))
        y0, y1 = sorted((float(y0), float(y1)))
        if not (x1 > x0 and y1 > y0):
            raise ValueError("rounded rectangle needs positive width and height")
        r = float(self.radius)
        if not (0 < r <= 0.5 * min(x1 - x0, y1 - y0)):
            raise ValueError("corner radius must be in (0, min(width, height)/2]")
        object.__setattr__(self, "corners", (Point2(x0, y0), Point2(x1, y1)))
        object.__setattr__(self, "radius", r)

    @property
    def _box(self):
        (x0, y0), (x1, y1) = self.corners
        return x0, y0, x1, y1

    def area(self) -> float:
        x0, y0, x1, y1 = self._box
        return (x1 - x0) * (y1 - y0) - (4 - math.pi) * self.radius**2

    def perimeter(self) -> float:
        x0, y0, x1, y1 = self._box
        return 2 * ((x1 - x0) + (y1 - y0)) - 8 * self.radius + 2 * math.pi * self.radius

    def diameter(self) -> float:
        x0, y0, x1, y1 = self._box
        r = self.radius
        return math.hypot(x1 - x0 - 2 * r, y1 - y0 - 2 * r) + 2 * r

    def centroid(self) -> Point2:
        x0, y0, x1, y1 = self._box
        return Point2(0.5 * (x0 + x1), 0.5 * (y0 + y1))

    def bbox(self):
        return self._box

    def signed_distance(self, pts) -> np.ndarray:
        p = _as_points(pts)
        x0, y0, x1, y1 = self._box
        r = self.radius
        c = np.array([0.5 * (x0 + x1), 0.5 * (y0 + y1)])
        half = np.array([0.5 * (x1 - x0) - r, 0.5 * (y1 - y0) - r])
        q = np.abs(p - c) - half
        outside = np.linalg.norm(np.maximum(q, 0.0), axis=1)
        inside = np.minimum(np.maximum(q[:, 0], q[:, 1]), 0.0)
        return outside + inside - r

    def _pieces(self):
        x0, y0, x1, y1 = self._box
        r = self.radius
        P = lambda x, y: np.array([x, y])  # noqa: E731
        kinds = ["edge", "arc", "edge", "arc", "edge", "arc", "edge", "arc"]
        data = [
            (P(x0 + r, y0), P(x1 - r, y0), P(0.0, -1.0)),
            (P(x1 - r, y0 + r), r, -0.5 * np.pi, 0.0),
            (P(x1, y0 + r), P(x1, y1 - r), P(1.0, 0.0)),
            (P(x1 - r, y1 - r), r, 0.0, 0.5 * np.pi),
            (P(x1 - r, y1), P(x0 + r, y1), P(0.0, 1.0)),
            (P(x0 + r, y1 - r), r, 0.5 * np.pi, np.pi),
            (P(x0, y1 - r), P(x0, y0 + r), P(-1.0, 0.0)),
            (P(x0 + r, y0 + r), r, np.pi, 1.5 * np.pi),
        ]
        w, h = x1 - x0 - 2 * r, y1 - y0 - 2 * r
        q = 0.5 * np.pi * r
        lengths = np.array([w, q, h, q, w, q, h, q])
        return kinds, data, lengths

    def project(self, pts) -> np.ndarray:
        p = _as_points(pts)
        kinds, data, lengths = self._pieces()
        best = np.full(len(p), np.inf)
        proj = np.zeros_like(p)
        for k, dat in zip(kinds, data):
            if k == "edge":
                d, q = _segment_distance(p, dat[0], dat[1])
            else:
                c, r, th0, th1 = dat
                v = p - c
                th = np.arctan2(v[:, 1], v[:, 0])
                mid = 0.5 * (th0 + th1)
                rel = (th - mid + np.pi) % (2 * np.pi) - np.pi
                tc = mid + np.clip(rel, th0 - mid, th1 - mid)
                q = c + r * np.column_stack([np.cos(tc), np.sin(tc)])
                d = np.linalg.norm(p - q, axis=1)
            better = d < best
            best = np.where(better, d, best)
            proj[better] = q[better]
        return proj

    def interior_radius(self) -> float:
        return self.radius

    def scaled(self, t: float) -> "RoundedRect":
        (x0, y0), (x1, y1) = self.corners
        return RoundedRect(((x0 * t, y0 * t), (x1 * t, y1 * t)), self.radius * t)

    def translated(self, dx: float, dy: float) -> "RoundedRect":
        (x0, y0), (x1, y1) = self.corners
        return RoundedRect(((x0 + dx, y0 + dy), (x1 + dx, y1 + dy)), self.radius)

    def to_dict(self) -> dict:
        return {
            "kind": "rounded-rectangle",
            "corners": [list(c) for c in self.corners],
            "radius": self.radius,
        }


BoundaryCurve = Union[Circle, Ellipse, Polygon, RoundedRect]


def _shoelace(v: np.ndarray) -> float:
    w = np.roll(v, -1, axis=0)
    return float(np.sum(v[:, 0] * w[:, 1] - w[:, 0] * v[:, 1]) / 2)


def _is_simple(v: np.ndarray) -> bool:
    n = len(v)
    for i in range(n):
        a1, a2 = v[i], v[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue
            if _segments_intersect(a1, a2, v[j], v[(j + 1) % n]):
                return False
    return True


def _convex_hull(pts: np.ndarray) -> np.ndarray:
    p = sorted(map(tuple, pts))
    if len(p) <= 2:
        return np.asarray(p)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for q in p:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], q) <= 0:
            lower.pop()
        lower.append(q)
    for q in reversed(p):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], q) <= 0:
            upper.pop()
        upper.append(q)
    return np.asarray(lower[:-1] + upper[:-1])


def _rotating_calipers_diameter(pts: np.ndarray) -> float:
    h = _convex_hull(pts)
    n = len(h)
    if n == 1:
        return 0.0
    if n == 2:
        return float(np.linalg.norm(h[1] - h[0]))

    def area2(i, j, k):
        a, b, c = h[i], h[j], h[k]
        return abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))

    best = 0.0
    j = 1
    for i in range(n):
        i2 = (i + 1) % n
        while area2(i, i2, (j + 1) % n) > area2(i, i2, j):
            j = (j + 1) % n
        best = max(best, float(np.linalg.norm(h[i] - h[j])), float(np.linalg.norm(h[i2] - h[j])))
    return best


# ---------------------------------------------------------------------------
# domains
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    a: Point2
    b: Point2

    def __post_init__(self):
        object.__setattr__(self, "a", Point2(*map(float, self.a)))
        object.__setattr__(self, "b", Point2(*map(float, self.b)))
        if self.length <= 0:
            raise ValueError("segment endpoints must differ")

    @property
    def length(self) -> float:
        return math.hypot(self.b.x - self.a.x, self.b.y - self.a.y)

    @property
    def midpoint(self) -> Point2:
        return Point2(0.5 * (self.a.x + self.b.x), 0.5 * (self.a.y + self.b.y))


@dataclass(frozen=True)
class PlanarDomain:
    """Region inside ``outer``, outside every hole closure, minus punctures."""

    outer: BoundaryCurve
    holes: tuple = ()
    punctures: tuple = ()
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "holes", tuple(self.holes))
        object.__setattr__(self, "punctures", tuple(Point2(*map(float, p)) for p in self.punctures))
        if self.validate:
            self._check()

    def _check(self):
        boxes = [h.bbox() for h in self.holes]
        for i, h in enumerate(self.holes):
            pts = h.sample(512)
            if not self.outer.contains(pts).all():
                raise ValueError(f"hole {i} is not strictly inside the outer curve")
            for j in range(i):
                a, b = boxes[i], boxes[j]
                if (a[0] > b[2] + BOUNDARY_TOL or b[0] > a[2] + BOUNDARY_TOL
                        or a[1] > b[3] + BOUNDARY_TOL or b[1] > a[3] + BOUNDARY_TOL):
                    continue  # bounding boxes apart: cannot overlap or touch
                other = self.holes[j]
                if other.contains(pts).any() or h.contains(other.sample(512)).any():
                    raise ValueError(f"holes {j} and {i} overlap")
                if np.min(other.distance(pts)) <= BOUNDARY_TOL:
                    raise ValueError(f"holes {j} and {i} touch")
        if self.punctures:
            P = np.asarray(self.punctures)
            if not self.contains(P, include_punctures=False).all():
                raise ValueError("punctures must lie in the open domain")
            if len(P) > 1:
                d = np.linalg.norm(P[:, None] - P[None], axis=2)
                if np.min(d + np.eye(len(P)) * 1e300) == 0:
                    raise ValueError("punctures must be distinct")

    @property
    def n_holes(self) -> int:
        """n(Omega): holes plus punctures."""
        return len(self.holes) + len(self.punctures)

    def components(self) -> list:
        """Boundary components: outer, holes, then punctures (as Point2)."""
        return [self.outer, *self.holes, *self.punctures]

    def bbox(self):
        return self.outer.bbox()

    def contains(self, pts, include_punctures: bool = True) -> np.ndarray:
        p = _as_points(pts)
        inside = self.outer.contains(p)
        for h in self.holes:
            idx = np.flatnonzero(inside)
            if len(idx):
                inside[idx] = h.signed_distance(p[idx]) > BOUNDARY_TOL
        if include_punctures and self.punctures:
            for q in self.punctures:
                inside &= np.hypot(p[:, 0] - q.x, p[:, 1] - q.y) > BOUNDARY_TOL
        return inside

    def boundary_distance(self, pts, include_punctures: bool = False) -> np.ndarray:
        p = _as_points(pts)
        d = self.outer.distance(p)
        for h in self.holes:
            d = np.minimum(d, h.distance(p))
        if include_punctures:
            for q in self.punctures:
                d = np.minimum(d, np.hypot(p[:, 0] - q.x, p[:, 1] - q.y))
        return d

    def is_convex(self) -> bool:
        return not self.holes and self.outer.is_convex()

    def with_punctures(self, pts) -> "PlanarDomain":
        return PlanarDomain(self.outer, self.holes, tuple(self.punctures) + tuple(map(tuple, pts)))

    def scaled(self, t: float) -> "PlanarDomain":
        return PlanarDomain(
            self.outer.scaled(t),
            tuple(h.scaled(t) for h in self.holes),
            tuple((p.x * t, p.y * t) for p in self.punctures),
        )

    def to_dict(self) -> dict:
        return {
            "outer": self.outer.to_dict(),
            "holes": [h.to_dict() for h in self.holes],
            "punctures": [list(p) for p in self.punctures],
        }


def curve_from_dict(d: dict) -> BoundaryCurve:
    kind = d.get("kind")
    if kind == "circle":
        return Circle(tuple(d["center"]), float(d["radius"]))
    if kind == "ellipse":
        return Ellipse(tuple(d["center"]), tuple(d["semi_axes"]))
    if kind == "polygon":
        return Polygon(tuple(map(tuple, d["vertices"])))
    if kind == "rounded-rectangle":
        return RoundedRect(tuple(map(tuple, d["corners"])), float(d["radius"]))
    raise ValueError(f"unknown curve kind {kind!r}")


def domain_from_dict(d: dict) -> PlanarDomain:
    if "outer" not in d:
        raise ValueError("domain spec needs an 'outer' curve")
    return PlanarDomain(
        curve_from_dict(d["outer"]),
        tuple(curve_from_dict(h) for h in d.get("holes", [])),
        tuple(tuple(p) for p in d.get("punctures", [])),
    )


# ---------------------------------------------------------------------------
# measures
# ---------------------------------------------------------------------------


def area(domain: PlanarDomain) -> float:
    """|Omega|: outer area minus hole areas; punctures have zero area."""
    return domain.outer.area() - sum(h.area() for h in domain.holes)


def perimeter(curve: BoundaryCurve) -> float:
    return curve.perimeter()


def diameter(curve: BoundaryCurve) -> float:
    return curve.diameter()


def distance_to_boundary(p, domain: PlanarDomain) -> float:
    """Distance from p to the outer curve and the holes; negative outside."""
    pt = _as_points(p)
    d = float(domain.boundary_distance(pt)[0])
    return d if domain.contains(pt, include_punctures=False)[0] else -d


def interior_ball_radius(domain: PlanarDomain) -> float:
    """Largest delta for which the delta-interior ball condition holds.

    Analytic on the outer curve (0 for polygons).  With holes it is also
    capped by half the smallest gap between boundary components.
    """
    delta = domain.outer.interior_radius()
    if domain.holes and delta > 0:
        comps = [domain.outer, *domain.holes]
        for i in range(len(comps)):
            for j in range(i):
                pts = comps[i].sample(2048)
                delta = min(delta, 0.5 * float(np.min(comps[j].distance(pts))))
    return delta


def _ray_lengths(outer: BoundaryCurve, pts: np.ndarray, dirs: np.ndarray) -> np.ndarray:
    t = outer.first_hit(pts, dirs)
    if not np.all(np.isfinite(t)):
        raise ValueError("a normal ray failed to hit the outer curve")
    return t


def widths(outer: BoundaryCurve, inner, m: int = 4096) -> tuple[float, float]:
    """Minimal and maximal width (beta, B) of the annulus outer \\ inner.

    ``inner`` is a curve or a single point (degenerate inner curve).  Rays
    leave the inner curve along its outward normals; the extrema of the
    sampled ray lengths are polished by golden-section search.
    """
    if isinstance(inner, Curve):
        def at(s):
            p, n = inner.boundary(np.atleast_1d(s))
            return p, n
    else:
        c = np.asarray(inner, dtype=float).reshape(2)
        if not outer.contains(c)[0]:
            raise ValueError("point must lie inside the outer curve")

        def at(s):
            th = 2 * np.pi * np.atleast_1d(s)
            n = np.column_stack([np.cos(th), np.sin(th)])
            return np.broadcast_to(c, n.shape), n

    s = np.arange(m) / m
    p, n = at(s)
    L = _ray_lengths(outer, p, n)

    def length(x):
        pp, nn = at(x)
        return float(_ray_lengths(outer, pp, nn)[0])

    out = []
    for maximize in (False, True):
        i = int(np.argmax(L) if maximize else np.argmin(L))
        _, val = _golden_extremum(length, s[i] - 1.0 / m, s[i] + 1.0 / m, maximize)
        val = max(val, L[i]) if maximize else min(val, L[i])
        out.append(val)
    beta, big_b = out
    if not isinstance(inner, Curve):
        beta = min(beta, float(outer.distance(c)[0]))
    return beta, big_b
