"""Discrete magnetic Neumann Laplacian on a masked square lattice.

Vertices are cell centres ``origin + (i + 1/2, j + 1/2) * h`` lying in the
domain; an edge joins 4-neighbours whose midpoint is also in the domain and
carries the Peierls phase ``theta_vw`` (line integral of the potential).
The operator is

    (H u)(v) = h^-2 * sum_{w ~ v} (u(v) - exp(i theta_vw) u(w)),

so missing neighbours realise the natural (Neumann) boundary condition.
"""

from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from scipy import integrate
from scipy.sparse import csgraph

from .geometry import Point2, PlanarDomain
from .potential import PolePotential

DENSE_LIMIT = 1500


class ConvergenceError(RuntimeError):
    def __init__(self, msg, result=None):
        super().__init__(msg)
        self.result = result


@dataclass(frozen=True, eq=False)
class GridDiscretization:
    spacing: float
    origin: Point2
    shape: tuple
    mask: np.ndarray = field(repr=False)
    coords: np.ndarray = field(repr=False)
    edges: np.ndarray = field(repr=False)  # (E, 2) vertex indices v < w
    phases: np.ndarray = field(repr=False)  # theta on the directed edge v -> w
    eta: float = 0.0
    n_components: int = 1

    @property
    def n_vertices(self) -> int:
        return len(self.coords)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @functools.cached_property
    def degree(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.n_vertices).astype(float)

    @functools.cached_property
    def operator(self) -> sp.csr_matrix:
        n = self.n_vertices
        v, w = self.edges[:, 0], self.edges[:, 1]
        link = np.exp(1j * self.phases)
        rows = np.concatenate([v, w, np.arange(n)])
        cols = np.concatenate([w, v, np.arange(n)])
        vals = np.concatenate([-link, -np.conj(link), self.degree.astype(complex)])
        H = sp.csr_matrix((vals, (rows, cols)), shape=(n, n))
        return H / self.spacing**2

    def apply(self, u) -> np.ndarray:
        return self.operator @ np.asarray(u, dtype=complex)

    def grid_field(self, u, fill=np.nan) -> np.ndarray:
        """Scatter a vertex field back to the lattice array (for plotting)."""
        out = np.full(self.shape, fill, dtype=np.asarray(u).dtype)
        out[self.mask] = u
        return out


def _lattice(domain: PlanarDomain, spacing: float, origin=None):
    x0, y0, x1, y1 = domain.bbox()
    if origin is None:
        origin = (x0, y0)
    ox, oy = map(float, origin)
    nx = int(math.ceil((x1 - ox) / spacing)) + 1
    ny = int(math.ceil((y1 - oy) / spacing)) + 1
    xs = ox + (np.arange(nx) + 0.5) * spacing
    ys = oy + (np.arange(ny) + 0.5) * spacing
    return Point2(ox, oy), xs, ys


def discretize(domain: PlanarDomain, potential: PolePotential, spacing: float,
               eta: float | None = None, origin=None) -> GridDiscretization:
    """Build the masked lattice and its link phases.

    ``eta`` is the radius of the disks removed around punctures; it defaults
    to twice the spacing, and must be at least the spacing.
    """
    if not spacing > 0:
        raise ValueError("spacing must be positive")
    if eta is None:
        eta = 2.0 * spacing if domain.punctures else 0.0
    if domain.punctures and eta < spacing * (1 - 1e-12):
        raise ValueError("eta must be at least the spacing when punctures are present")
    origin, xs, ys = _lattice(domain, spacing, origin)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    pts = np.column_stack([X.ravel(), Y.ravel()])
    inside = domain.contains(pts, include_punctures=False)
    for q in domain.punctures:
        inside &= np.hypot(pts[:, 0] - q.x, pts[:, 1] - q.y) > eta
    mask = inside.reshape(X.shape)
    n = int(mask.sum())
    if n == 0:
        raise ValueError("empty mask: spacing too coarse for the domain")
    num = -np.ones(mask.shape, dtype=np.int64)
    num[mask] = np.arange(n)
    coords = np.column_stack([X[mask], Y[mask]])

    v_list, w_list = [], []
    for di, dj in ((1, 0), (0, 1)):
        a = mask[: mask.shape[0] - di, : mask.shape[1] - dj]
        b = mask[di:, dj:]
        both = a & b
        v_list.append(num[: mask.shape[0] - di, : mask.shape[1] - dj][both])
        w_list.append(num[di:, dj:][both])
    v = np.concatenate(v_list)
    w = np.concatenate(w_list)
    # drop links that jump over a sliver of the complement
    mid = 0.5 * (coords[v] + coords[w])
    keep = domain.contains(mid, include_punctures=False)
    v, w = v[keep], w[keep]
    if len(potential):
        if np.min(potential.min_pole_distance(coords[v], coords[w])) <= 1e-12:
            raise ValueError("a lattice edge passes through a pole")
        theta = potential.phases(coords[v], coords[w])
    else:
        theta = np.zeros(len(v))
    edges = np.column_stack([v, w])
    ncomp = 1
    if n > 1:
        adj = sp.coo_matrix((np.ones(len(v)), (v, w)), shape=(n, n))
        ncomp = int(csgraph.connected_components(adj, directed=False)[0])
        if ncomp > 1:
            warnings.warn(f"lattice mask has {ncomp} connected components", RuntimeWarning)
    for arr in (mask, coords, edges, theta):
        arr.setflags(write=False)
    return GridDiscretization(spacing=float(spacing), origin=origin, shape=mask.shape, mask=mask,
                              coords=coords, edges=edges, phases=theta, eta=float(eta),
                              n_components=ncomp)


def gauge_transform(grid: GridDiscretization, f) -> GridDiscretization:
    """Replace theta_vw by theta_vw + f(w) - f(v); conjugates H by diag(e^{-if})."""
    f = np.asarray(f, dtype=float)
    if f.shape != (grid.n_vertices,) or not np.all(np.isfinite(f)):
        raise ValueError("gauge field must be finite with one value per vertex")
    theta = grid.phases + f[grid.edges[:, 1]] - f[grid.edges[:, 0]]
    theta.setflags(write=False)
    return replace(grid, phases=theta)


def restrict(grid: GridDiscretization, keep) -> GridDiscretization:
    """Sub-grid on the vertices flagged in ``keep`` (Neumann on the new boundary)."""
    keep = np.asarray(keep, dtype=bool)
    new_index = -np.ones(grid.n_vertices, dtype=np.int64)
    new_index[keep] = np.arange(int(keep.sum()))
    e = grid.edges
    sel = keep[e[:, 0]] & keep[e[:, 1]]
    mask = grid.mask.copy()
    mask[mask] = keep
    edges = new_index[e[sel]]
    return replace(grid, mask=mask, coords=grid.coords[keep], edges=edges,
                   phases=grid.phases[sel])


# ---------------------------------------------------------------------------
# eigensolver
# ---------------------------------------------------------------------------


@dataclass
class SpectrumResult:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns, normalised so that h^2 * sum |u|^2 = 1
    residuals: np.ndarray
    iterations: int
    converged: bool
    spacing: float
    eta: float

    @property
    def ground_state(self) -> np.ndarray:
        return self.eigenvectors[:, 0]

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "residuals": [float(x) for x in self.residuals],
            "spacing": self.spacing,
            "eta": self.eta,
        }


def _fix_phase(vecs: np.ndarray) -> np.ndarray:
    out = vecs.copy()
    for j in range(out.shape[1]):
        i = int(np.argmax(np.abs(out[:, j])))
        z = out[i, j]
        if z != 0:
            out[:, j] *= np.conj(z) / abs(z)
    return out


def _preconditioner(H, kind: str, shift: float):
    n = H.shape[0]
    if kind == "diagonal":
        d = 1.0 / (H.diagonal().real + shift)

        def solve(x):
            return d[:, None] * x if x.ndim == 2 else d * x
    elif kind == "lu":
        A = (H + shift * sp.identity(n, format="csr")).tocsc()
        lu = spla.splu(A, permc_spec="MMD_AT_PLUS_A", options=dict(SymmetricMode=True))
        solve = lu.solve
    else:
        raise ValueError(f"unknown preconditioner {kind!r}")
    return spla.LinearOperator((n, n), matvec=solve, matmat=solve, dtype=complex)


def lowest_eigenpairs(grid: GridDiscretization, k: int = 1, tol: float = 1e-8,
                      maxiter: int = 5000, seed: int = 42, preconditioner: str = "lu",
                      shift: float = 1.0, raise_on_failure: bool = False) -> SpectrumResult:
    """k smallest eigenpairs by LOBPCG (dense eigh for tiny grids).

    ``tol`` bounds the residual ||Hu - lambda u|| / ||u|| of every pair.
    ``preconditioner`` is "lu" (sparse factorisation of H + shift) or
    "diagonal" (Jacobi).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    H = grid.operator
    n = H.shape[0]
    if k > n:
        raise ValueError("k exceeds the number of lattice vertices")
    block = min(k + 2, n)
    if n <= max(DENSE_LIMIT, 5 * block):
        lam, vec = sla.eigh(H.toarray(), subset_by_index=[0, k - 1])
        iterations = 0
    else:
        rng = np.random.default_rng(seed)
        X0 = rng.standard_normal((n, block)) + 1j * rng.standard_normal((n, block))
        M = _preconditioner(H, preconditioner, shift)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)
            lam, vec, hist = spla.lobpcg(H, X0, M=M, tol=tol, maxiter=maxiter, largest=False,
                                          retResidualNormsHistory=True)
        iterations = len(hist)
        order = np.argsort(lam)[:k]
        lam, vec = lam[order], vec[:, order]
    vec = np.asarray(vec, dtype=complex)
    norms = np.linalg.norm(vec, axis=0)
    res = np.linalg.norm(H @ vec - vec * lam, axis=0) / norms
    vec = _fix_phase(vec / (norms * grid.spacing))
    converged = bool(np.all(res <= tol))
    # H is positive semidefinite: negative values are pure roundoff
    lam = np.maximum(np.asarray(lam, dtype=float), 0.0)
    result = SpectrumResult(lam, vec, res, iterations, converged,
                            grid.spacing, grid.eta)
    if not converged and raise_on_failure:
        raise ConvergenceError(f"eigensolver did not converge (best residual {res.max():.3e})",
                               result)
    return result


def rayleigh_quotient(grid: GridDiscretization, u) -> float:
    u = np.asarray(u, dtype=complex)
    den = float(np.sum(np.abs(u) ** 2))
    if den == 0.0:
        raise ValueError("trial field vanishes identically")
    v, w = grid.edges[:, 0], grid.edges[:, 1]
    diff = u[v] - np.exp(1j * grid.phases) * u[w]
    return float(np.sum(np.abs(diff) ** 2) / (grid.spacing**2 * den))


# ---------------------------------------------------------------------------
# test functions of the upper-bound proofs
# ---------------------------------------------------------------------------


def cutoff_profile(d, r: float) -> np.ndarray:
    """1 on [0, r], 2 - d/r on [r, 2r], 0 beyond."""
    d = np.asarray(d, dtype=float)
    return np.clip(2.0 - d / r, 0.0, 1.0)


def log_cutoff_profile(d, h: float) -> np.ndarray:
    """0 on [0, h], -2 (ln d - ln h) / ln h on [h, sqrt h], 1 beyond."""
    if not 0 < h < 1:
        raise ValueError("log cutoff needs 0 < h < 1")
    d = np.asarray(d, dtype=float)
    with np.errstate(divide="ignore"):
        val = -2.0 * (np.log(np.maximum(d, h)) - math.log(h)) / math.log(h)
    return np.clip(val, 0.0, 1.0)


def flat_gauge(grid: GridDiscretization, support) -> np.ndarray:
    """Phase g on ``support`` with g_w = g_v - theta_vw along a BFS tree.

    On any simply connected part of the support (where the discrete
    connection is flat) this makes  u = f e^{ig}  see no magnetic phase:
    u_v - e^{i theta_vw} u_w = (f_v - f_w) e^{i g_v}.
    """
    support = np.asarray(support, dtype=bool)
    n = grid.n_vertices
    e = grid.edges
    sel = support[e[:, 0]] & support[e[:, 1]]
    v, w, th = e[sel, 0], e[sel, 1], grid.phases[sel]
    ids = np.arange(1, len(v) + 1, dtype=float)
    # directed edge lookup: +id for v->w, -id for w->v
    E = sp.csr_matrix((np.concatenate([ids, -ids]), (np.concatenate([v, w]), np.concatenate([w, v]))),
                      shape=(n, n))
    g = np.zeros(n)
    ncomp, labels = csgraph.connected_components(E != 0, directed=False)
    roots = [int(np.flatnonzero((labels == c) & support)[0])
             for c in range(ncomp) if np.any((labels == c) & support)]
    depth = np.full(n, -1, dtype=np.int64)
    pred = np.full(n, -1, dtype=np.int64)
    if roots:
        dist, prd = csgraph.shortest_path(E != 0, method="D", directed=False, unweighted=True,
                                          indices=roots, return_predecessors=True)
        dist = np.atleast_2d(dist)
        prd = np.atleast_2d(prd)
        reach = np.isfinite(dist)
        which = np.argmax(reach, axis=0)
        ok = reach.any(axis=0)
        cols = np.flatnonzero(ok)
        depth[cols] = dist[which[cols], cols].astype(np.int64)
        pred[cols] = prd[which[cols], cols]
    nodes = np.flatnonzero(depth > 0)
    if len(nodes):
        levels = depth[nodes]
        srt = np.argsort(levels, kind="stable")
        nodes, levels = nodes[srt], levels[srt]
        parents = pred[nodes]
        sign_id = np.asarray(E[parents, nodes]).ravel()
        idx = np.abs(sign_id).astype(np.int64) - 1
        theta_pc = np.where(sign_id > 0, th[idx], -th[idx])
        bounds = np.searchsorted(levels, np.arange(1, levels[-1] + 2))
        for lo, hi in zip(bounds[:-1], bounds[1:]):
            g[nodes[lo:hi]] = g[parents[lo:hi]] - theta_pc[lo:hi]
    return g


def _gauged_field(grid, f) -> np.ndarray:
    support = f != 0
    if not support.any():
        raise ValueError("trial field vanishes on the lattice")
    g = flat_gauge(grid, support)
    return f * np.exp(1j * g)


def cutoff_trial_field(grid: GridDiscretization, p, r: float) -> np.ndarray:
    """Plateau 1 on B(p, r), linear taper to 0 at 2r, gauged to be flat."""
    if not r > 0:
        raise ValueError("r must be positive")
    d = np.hypot(grid.coords[:, 0] - p[0], grid.coords[:, 1] - p[1])
    return _gauged_field(grid, cutoff_profile(d, r))


def log_cutoff_trial_field(grid: GridDiscretization, cuts) -> np.ndarray:
    """Product of log cutoffs centred at the cut midpoints, gauged to be flat.

    Each factor vanishes within distance h_i of the midpoint q_i, hence on
    the whole cut; the remaining support avoids every cut, where the
    potential is exact.
    """
    f = np.ones(grid.n_vertices)
    for seg in cuts.segments:
        h = seg.length
        if h >= 1:
            raise ValueError(f"degenerate cut of length {h} >= 1")
        q = seg.midpoint
        d = np.hypot(grid.coords[:, 0] - q.x, grid.coords[:, 1] - q.y)
        f *= log_cutoff_profile(d, h)
    return _gauged_field(grid, f)


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------


def _radial_lowest(r1, r2, nu2, npts):
    dr = (r2 - r1) / npts
    rho = r1 + (np.arange(npts) + 0.5) * dr
    face = r1 + np.arange(1, npts) * dr
    c = face / dr  # flux coefficient rho_face / dr
    diag = np.zeros(npts)
    diag[:-1] += c
    diag[1:] += c
    diag += nu2 * dr / rho
    wt = rho * dr
    s = 1.0 / np.sqrt(wt)
    d = diag * s * s
    off = -c * s[:-1] * s[1:]
    _, y = sla.eigh_tridiagonal(d, off, select="i", select_range=(0, 0))
    f = y[:, 0] * s
    # Rayleigh quotient in difference form: exact zero for the constant mode
    num = np.sum(c * np.diff(f) ** 2) + nu2 * np.sum(dr / rho * f * f)
    return float(num / np.sum(wt * f * f))


def annulus_oracle(r1: float, r2: float, phi: float, modes=None, radial_points: int = 4000) -> float:
    """Lowest eigenvalue on the concentric annulus with a central pole of flux phi.

    Separation u = f(rho) e^{i m theta} gives -(rho f')'/rho + (m - phi)^2 f / rho^2
    with Neumann ends; each mode is solved by finite volumes.
    """
    if not 0 < r1 < r2:
        raise ValueError("need 0 < r1 < r2")
    if modes is None:
        c = int(round(phi))
        modes = range(min(-2, c - 2), max(2, c + 2) + 1)
    if not set(range(-2, 3)) <= set(modes):
        raise ValueError("modes must cover m in -2..2")
    return min(_radial_lowest(r1, r2, (m - phi) ** 2, radial_points) for m in modes)


def _bessel1_slope_at_one(k: float) -> float:
    r0 = 1e-6

    def rhs(rho, y):
        f, fp = y
        return [fp, -fp / rho - (k * k - 1.0 / rho**2) * f]

    y0 = [r0 - k * k * r0**3 / 8, 1 - 3 * k * k * r0**2 / 8]
    sol = integrate.solve_ivp(rhs, (r0, 1.0), y0, method="DOP853", rtol=1e-12, atol=1e-14)
    return float(sol.y[1, -1])


@functools.lru_cache(maxsize=None)
def disk_neumann_lambda2_oracle() -> float:
    """Second Neumann eigenvalue of the unit disk, (j'_{1,1})^2 ~ 3.38996."""
    lo, hi = 1.0, 2.5
    flo = _bessel1_slope_at_one(lo)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        fm = _bessel1_slope_at_one(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    k = 0.5 * (lo + hi)
    return k * k
