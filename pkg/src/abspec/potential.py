"""Closed Aharonov-Bohm pole potentials and flux bookkeeping."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Point2, PlanarDomain, Segment

POLE_TOL = 1e-12


@dataclass(frozen=True)
class PolePotential:
    """Sum of pole forms  Phi_i * d(angle about p_i).

    Each term is closed away from its pole and has flux Phi_i around any
    loop winding once about p_i.
    """

    poles: tuple = ()

    def __post_init__(self):
        poles = tuple((Point2(*map(float, p)), float(f)) for p, f in self.poles)
        pts = [p for p, _ in poles]
        if len(set(pts)) != len(pts):
            raise ValueError("pole positions must be distinct")
        object.__setattr__(self, "poles", poles)

    @property
    def positions(self) -> np.ndarray:
        return np.array([p for p, _ in self.poles], dtype=float).reshape(-1, 2)

    @property
    def fluxes(self) -> np.ndarray:
        return np.array([f for _, f in self.poles], dtype=float)

    def __len__(self):
        return len(self.poles)

    def phases(self, a, b) -> np.ndarray:
        """Vectorised line integral of the form along segments a[i] -> b[i]."""
        a = np.asarray(a, dtype=float).reshape(-1, 2)
        b = np.asarray(b, dtype=float).reshape(-1, 2)
        theta = np.zeros(len(a))
        for (px, py), flux in self.poles:
            ux, uy = a[:, 0] - px, a[:, 1] - py
            vx, vy = b[:, 0] - px, b[:, 1] - py
            theta += flux * np.arctan2(ux * vy - uy * vx, ux * vx + uy * vy)
        return theta

    def min_pole_distance(self, a, b) -> np.ndarray:
        """Distance from each segment a[i]b[i] to the nearest pole."""
        a = np.asarray(a, dtype=float).reshape(-1, 2)
        b = np.asarray(b, dtype=float).reshape(-1, 2)
        out = np.full(len(a), np.inf)
        ab = b - a
        L2 = np.maximum(np.sum(ab * ab, axis=1), 1e-300)
        for p, _ in self.poles:
            t = np.clip(np.sum((np.asarray(p) - a) * ab, axis=1) / L2, 0.0, 1.0)
            q = a + t[:, None] * ab
            out = np.minimum(out, np.hypot(q[:, 0] - p.x, q[:, 1] - p.y))
        return out

    def one_form(self, pts) -> np.ndarray:
        """Components (A_x, A_y) of the form at the given points."""
        p = np.asarray(pts, dtype=float).reshape(-1, 2)
        A = np.zeros_like(p)
        for (px, py), flux in self.poles:
            dx, dy = p[:, 0] - px, p[:, 1] - py
            r2 = dx * dx + dy * dy
            A[:, 0] += -flux * dy / r2
            A[:, 1] += flux * dx / r2
        return A


@dataclass(frozen=True)
class FluxReport:
    fluxes: tuple
    distances: tuple
    min_distance: float


def pole_potential_from_domain(domain: PlanarDomain, fluxes) -> PolePotential:
    """One pole per hole (at its centroid) and one per puncture, in that order."""
    fluxes = [float(f) for f in fluxes]
    if len(fluxes) != domain.n_holes:
        raise ValueError(f"expected {domain.n_holes} fluxes, got {len(fluxes)}")
    sites = [h.centroid() for h in domain.holes] + list(domain.punctures)
    return PolePotential(tuple(zip(sites, fluxes)))


def edge_phase(potential: PolePotential, seg: Segment) -> float:
    """Integral of the potential along a segment (continuous angle branch)."""
    a = np.asarray(seg.a)[None]
    b = np.asarray(seg.b)[None]
    if len(potential) and potential.min_pole_distance(a, b)[0] <= POLE_TOL:
        raise ValueError("segment passes through a pole")
    return float(potential.phases(a, b)[0])


def loop_flux(potential: PolePotential, loop) -> float:
    """(1/2 pi) times the circulation around a closed polyline."""
    pts = np.asarray(loop, dtype=float).reshape(-1, 2)
    if len(pts) > 1 and np.allclose(pts[0], pts[-1]):
        pts = pts[:-1]
    if len(pts) < 2:
        raise ValueError("loop needs at least two distinct vertices")
    a, b = pts, np.roll(pts, -1, axis=0)
    if len(potential) and np.min(potential.min_pole_distance(a, b)) <= POLE_TOL:
        raise ValueError("loop passes through a pole")
    return float(np.sum(potential.phases(a, b)) / (2 * math.pi))


def dist_to_integers(phi: float) -> float:
    phi = float(phi)
    if not math.isfinite(phi):
        raise ValueError("flux must be finite")
    frac = phi - math.floor(phi)
    return min(frac, 1.0 - frac)


def flux_report(fluxes) -> FluxReport:
    fl = tuple(float(f) for f in fluxes)
    d = tuple(dist_to_integers(f) for f in fl)
    return FluxReport(fl, d, min(d) if d else 0.0)
