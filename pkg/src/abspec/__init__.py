"""Lowest eigenvalue of the magnetic Neumann Laplacian with Aharonov-Bohm
potentials on planar domains with holes, and the bounds that control it."""

from .bounds import BoundReport, domain_bounds
from .cuts import CutError, CutSet, check_cut, heuristic_min_cut, is_admissible
from .families import (make_annulus, make_disk, make_fundamental_piece, make_omega_k, make_punctured,
                       make_thin_bridge)
from .geometry import (Circle, Ellipse, PlanarDomain, Polygon, RoundedRect, Segment, area, diameter,
                       domain_from_dict, perimeter, widths)
from .nets import EpsNet, VoronoiPartition, good_ball, maximal_eps_net, voronoi_partition
from .potential import PolePotential, flux_report, pole_potential_from_domain
from .solver import (ConvergenceError, GridDiscretization, SpectrumResult, annulus_oracle, discretize,
                     lowest_eigenpairs, rayleigh_quotient)

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "domain_bounds", "CutError", "CutSet", "check_cut", "heuristic_min_cut",
    "is_admissible", "make_annulus", "make_disk", "make_fundamental_piece", "make_omega_k",
    "make_punctured", "make_thin_bridge", "Circle", "Ellipse", "PlanarDomain", "Polygon",
    "RoundedRect", "Segment", "area", "diameter", "domain_from_dict", "perimeter", "widths", "EpsNet",
    "VoronoiPartition", "good_ball", "maximal_eps_net", "voronoi_partition", "PolePotential",
    "flux_report", "pole_potential_from_domain", "ConvergenceError", "GridDiscretization",
    "SpectrumResult", "annulus_oracle", "discretize", "lowest_eigenpairs", "rayleigh_quotient",
]
