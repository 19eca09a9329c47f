import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.spatial import ConvexHull

from abspec.families import make_fundamental_piece, make_omega_k, omega_k_closed_forms
from abspec.geometry import (Circle, Ellipse, PlanarDomain, Polygon, RoundedRect, Segment, area,
                             diameter, distance_to_boundary, domain_from_dict, interior_ball_radius,
                             perimeter, widths)


def test_area_examples():
    assert area(PlanarDomain(Circle((0, 0), 1))) == pytest.approx(math.pi, rel=1e-14)
    assert area(make_fundamental_piece(2)) == pytest.approx(2.353553, abs=1e-6)
    assert area(make_omega_k(3)) == pytest.approx(8.769800, abs=1e-6)


def test_perimeter_examples():
    assert perimeter(Circle((0, 0), 1)) == pytest.approx(2 * math.pi, rel=1e-14)
    assert perimeter(make_fundamental_piece(2).outer) == pytest.approx(8.0, rel=1e-14)
    assert perimeter(Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])) == pytest.approx(4.0)


def test_ellipse_perimeter_against_quadrature():
    from scipy.integrate import quad

    a, b = 2.0, 1.0
    ref, _ = quad(lambda t: math.hypot(a * math.sin(t), b * math.cos(t)), 0, 2 * math.pi,
                  epsabs=1e-13, epsrel=1e-13, limit=400)
    assert perimeter(Ellipse((0, 0), (a, b))) == pytest.approx(ref, rel=1e-10)


def test_diameter_examples():
    assert diameter(Circle((3, 1), 1)) == pytest.approx(2.0)
    assert diameter(make_fundamental_piece(2).outer) == pytest.approx(2 * math.sqrt(2), rel=1e-14)
    assert diameter(Ellipse((0, 0), (2, 1))) == pytest.approx(4.0)


@given(st.lists(st.tuples(st.floats(-5, 5), st.floats(-5, 5)), min_size=3, max_size=30, unique=True))
def test_polygon_diameter_matches_brute_force(pts):
    P = np.array(pts)
    try:
        hull = P[ConvexHull(P).vertices]
    except Exception:
        return
    if len(hull) < 3:
        return
    brute = np.max(np.linalg.norm(hull[:, None] - hull[None], axis=2))
    assert diameter(Polygon(hull)) == pytest.approx(brute, rel=1e-12)


def test_widths_examples():
    beta, B = widths(Circle((0, 0), 1), Circle((0, 0), 0.5))
    assert (beta, B) == pytest.approx((0.5, 0.5), abs=1e-9)
    piece = make_fundamental_piece(2)
    beta, B = widths(piece.outer, piece.holes[0])
    assert beta == pytest.approx(2**-2.5, rel=1e-4)
    assert B == pytest.approx(0.5 * math.sqrt(1 + 1 / 8), rel=1e-4)
    assert widths(Circle((0, 0), 1), (0.0, 0.0)) == pytest.approx((1.0, 1.0), abs=1e-9)


@given(st.floats(0.0, 0.3), st.floats(0.1, 0.5), st.floats(0, 2 * math.pi))
def test_widths_eccentric_circles_closed_form(c, r, phi):
    # inner circle of radius r centred at distance c from the centre of the unit circle:
    # normal rays give lengths between 1 - c - r and 1 + c - r
    inner = Circle((c * math.cos(phi), c * math.sin(phi)), r)
    beta, B = widths(Circle((0, 0), 1), inner)
    assert beta == pytest.approx(1 - c - r, abs=1e-7)
    assert B == pytest.approx(1 + c - r, abs=1e-7)


def test_widths_bracket_curve_distance():
    outer, inner = Ellipse((0, 0), (2, 1)), Circle((0.2, 0.1), 0.3)
    beta, B = widths(outer, inner)
    d = inner.distance(outer.sample(4096))
    assert beta <= d.min() + 1e-6
    assert d.min() <= B


def test_distance_to_boundary():
    disk = PlanarDomain(Circle((0, 0), 1))
    assert distance_to_boundary((0, 0), disk) == pytest.approx(1.0)
    assert distance_to_boundary((0.9, 0), disk) == pytest.approx(0.1)
    ann = PlanarDomain(Circle((0, 0), 1), (Circle((0, 0), 0.5),))
    # (0.25, 0) lies in the hole, so the distance comes back negative
    assert distance_to_boundary((0.25, 0), ann) == pytest.approx(-0.25)
    assert distance_to_boundary((0.75, 0), ann) == pytest.approx(0.25)
    assert distance_to_boundary((2.0, 0), disk) < 0


def test_interior_ball_radius():
    assert interior_ball_radius(PlanarDomain(Circle((0, 0), 1))) == 1.0
    assert interior_ball_radius(PlanarDomain(Polygon([(0, 0), (1, 0), (0, 1)]))) == 0.0
    assert interior_ball_radius(PlanarDomain(RoundedRect(((0, 0), (2, 1)), 0.25))) == 0.25


def test_ellipse_delta_by_curvature_sampling():
    a, b = 2.0, 1.0
    t = np.linspace(0, 2 * np.pi, 200001)
    # radius of curvature of (a cos t, b sin t)
    rho = (a**2 * np.sin(t) ** 2 + b**2 * np.cos(t) ** 2) ** 1.5 / (a * b)
    assert interior_ball_radius(PlanarDomain(Ellipse((0, 0), (a, b)))) == pytest.approx(rho.min(), rel=1e-9)
    assert rho.min() == pytest.approx(0.5, rel=1e-9)


def test_containment_boundary_points_are_outside():
    sq = Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert not sq.contains(np.array([[0.5, 0.0], [1.0, 1.0]])).any()
    assert sq.contains(np.array([[0.5, 0.5]])).all()
    assert not Circle((0, 0), 1).contains(np.array([[1.0, 0.0]]))[0]


@given(st.floats(0.1, 10.0))
def test_area_scaling(t):
    for dom in (make_fundamental_piece(3),
                PlanarDomain(Ellipse((0.3, 0), (2, 1)), (Circle((0.5, 0.2), 0.3),)),
                PlanarDomain(RoundedRect(((0, 0), (2, 1)), 0.3))):
        assert area(dom.scaled(t)) == pytest.approx(t * t * area(dom), rel=1e-12)


@given(st.lists(st.tuples(st.floats(-3, 3), st.floats(-3, 3)), min_size=3, max_size=40, unique=True))
def test_shoelace_equals_fan(pts):
    P = np.array(pts)
    try:
        hull = P[ConvexHull(P).vertices]
    except Exception:
        return
    if len(hull) < 3:
        return
    poly = Polygon(hull)
    v = poly.array
    a, b = v[1:-1] - v[0], v[2:] - v[0]
    fan = np.sum(0.5 * np.abs(a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]))
    assert poly.area() == pytest.approx(fan, rel=1e-12)


@pytest.mark.parametrize("k", range(2, 9))
def test_omega_k_geometric_closed_forms(k):
    piece = make_fundamental_piece(k)
    beta, B = widths(piece.outer, piece.holes[0])
    cf = omega_k_closed_forms(k)
    assert area(piece) == pytest.approx(8 / k**2 + 4 / k**3.5, rel=1e-12)
    assert piece.outer.area() == pytest.approx(16 / k**2, rel=1e-12)
    assert diameter(piece.outer) == pytest.approx(4 * math.sqrt(2) / k, rel=1e-12)
    assert perimeter(piece.outer) == pytest.approx(16 / k, rel=1e-12)
    assert cf["beta"] == pytest.approx(k**-2.5, rel=1e-12)
    assert cf["B"] == pytest.approx(math.sqrt(1 + k**-3.0) / k, rel=1e-12)
    # sampled widths agree with the closed forms
    assert beta == pytest.approx(cf["beta"], rel=1e-4)
    assert B == pytest.approx(cf["B"], rel=1e-4)


def test_domain_json_round_trip():
    dom = PlanarDomain(Circle((0, 0), 2), (Polygon([(-0.5, -0.5), (0.5, -0.5), (0, 0.5)]),
                                          Ellipse((1.2, 0), (0.3, 0.2))), ((0, 1.5),))
    again = domain_from_dict(dom.to_dict())
    assert again == dom
    assert again.n_holes == 3


def test_invalid_curves_and_domains():
    with pytest.raises(ValueError):
        Circle((0, 0), -1)
    with pytest.raises(ValueError):
        Polygon([(0, 0), (1, 1)])
    with pytest.raises(ValueError):
        Polygon([(0, 0), (1, 1), (1, 0), (0, 1)])  # bow tie
    with pytest.raises(ValueError):
        PlanarDomain(Circle((0, 0), 1), (Circle((0.9, 0), 0.5),))
    with pytest.raises(ValueError):
        PlanarDomain(Circle((0, 0), 1), (), ((2, 0),))
    with pytest.raises(ValueError):
        Segment((0, 0), (0, 0))
    with pytest.raises(ValueError):
        domain_from_dict({"outer": {"kind": "spline"}})
