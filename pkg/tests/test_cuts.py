import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from abspec.cuts import (CutError, CutSet, check_cut, cutset_from_dict, heuristic_min_cut, is_admissible,
                         omega_k_reference_cut)
from abspec.families import make_annulus, make_disk, make_omega_k, make_thin_bridge
from abspec.geometry import Circle, Ellipse, PlanarDomain, Segment
from conftest import raster_simply_connected


def two_hole_disk(c=0.3, r=0.2):
    return PlanarDomain(Circle((0, 0), 1), (Circle((-c, 0), r), Circle((c, 0), r)))


def test_annulus_cuts():
    ann = make_annulus(0.5, 1)
    one = CutSet((Segment((0.5, 0), (1, 0)),))
    assert is_admissible(ann, one)
    assert raster_simply_connected(ann, one)
    assert not is_admissible(ann, CutSet(()))
    assert not raster_simply_connected(ann, CutSet(()))


def test_cycle_is_not_admissible():
    dom = two_hole_disk(0.5, 0.2)
    x = 0.5 - math.sqrt(0.2**2 - 0.1**2)
    cyc = CutSet((Segment((-x, 0.1), (x, 0.1)), Segment((-x, -0.1), (x, -0.1))))
    ok, reason = check_cut(dom, cyc)
    assert not ok and "cycle" in reason
    # independent raster topology count agrees
    assert not raster_simply_connected(dom, cyc)
    tree = CutSet((Segment((-x, 0.1), (x, 0.1)), Segment((0.7, 0), (1, 0))))
    assert is_admissible(dom, tree) and raster_simply_connected(dom, tree)


def test_invalid_cut_geometry_raises():
    ann = make_annulus(0.5, 1)
    with pytest.raises(CutError):
        check_cut(ann, CutSet((Segment((0.6, 0), (1, 0)),)))  # endpoint off the boundary
    with pytest.raises(CutError):
        check_cut(ann, CutSet((Segment((-0.5, 0), (1, 0)),)))  # crosses the hole
    with pytest.raises(CutError):
        check_cut(PlanarDomain(Circle((0, 0), 1), (Circle((0, 0), 0.5),)),
                  CutSet((Segment((0, 0.5), (1, 1)),)))  # leaves the disk


def test_crossing_segments_rejected():
    dom = two_hole_disk(0.5, 0.2)
    up = Segment((0.5, 0.2), (0.5, math.sqrt(0.75)))
    slant = Segment((-0.3, 0.0), (math.cos(0.6), math.sin(0.6)))  # passes over the right hole
    ok, reason = check_cut(dom, CutSet((up, slant)))
    assert not ok and "cross" in reason
    assert not raster_simply_connected(dom, CutSet((up, slant)))
    fine = CutSet((up, Segment((-0.7, 0.0), (-1.0, 0.0))))
    assert is_admissible(dom, fine) and raster_simply_connected(dom, fine)


def test_annulus_heuristic():
    cut = heuristic_min_cut(make_annulus(0.5, 1))
    assert len(cut) == 1 and cut.total == pytest.approx(0.5, abs=1e-9)


def test_two_hole_disk_matches_spanning_tree_enumeration():
    dom = two_hole_disk()
    d = {(0, 1): 1 - 0.5, (0, 2): 1 - 0.5, (1, 2): 0.6 - 0.4}
    best = min(sum(d[e] for e in tree) for tree in itertools.combinations(d, 2)
               if len({v for e in tree for v in e}) == 3)
    cut = heuristic_min_cut(dom)
    assert cut.total == pytest.approx(best, abs=1e-9)
    assert is_admissible(dom, cut) and raster_simply_connected(dom, cut)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_omega_k_cuts(k):
    dom = make_omega_k(k)
    ref = omega_k_reference_cut(k)
    assert len(ref) == k * k
    assert ref.total == pytest.approx((2 * k - 1) / k**1.5, rel=1e-12)
    assert is_admissible(dom, ref)
    cut = heuristic_min_cut(dom)
    assert is_admissible(dom, cut)
    assert cut.total <= ref.total + 1e-12
    # the shortest tree links every hole to a neighbour through the 2 k^-2.5 gaps
    assert cut.total == pytest.approx((2 * k - 2) / k**1.5, rel=1e-9)


def test_omega_2_raster_oracle():
    dom = make_omega_k(2)
    for cut in (omega_k_reference_cut(2), heuristic_min_cut(dom)):
        assert raster_simply_connected(dom, cut, spacing=1 / 200)


def test_reference_cut_examples():
    assert omega_k_reference_cut(2).total == pytest.approx(1.060660, abs=1e-6)
    assert omega_k_reference_cut(3).total == pytest.approx(0.962250, abs=1e-6)


def test_thin_bridge_gap_is_cut():
    dom = make_thin_bridge(eps=0.1)
    cut = heuristic_min_cut(dom)
    assert cut.total == pytest.approx(0.1, abs=1e-12)


OUTERS = [Circle((0, 0), 1.0), Ellipse((0, 0), (1.4, 0.9))]


@given(st.sampled_from([0, 1]), st.floats(-0.3, 0.3), st.floats(-0.2, 0.2), st.floats(0.1, 0.3))
def test_doubly_connected_cut_is_boundary_distance(which, cx, cy, r):
    outer = OUTERS[which]
    hole = Circle((cx, cy), r)
    pts = hole.sample(64)
    if not outer.contains(pts).all() or np.min(outer.distance(pts)) < 0.05:
        return
    dom = PlanarDomain(outer, (hole,))
    cut = heuristic_min_cut(dom)
    assert is_admissible(dom, cut)
    dist = float(np.min(hole.distance(outer.sample(200_000))))
    assert cut.total == pytest.approx(dist, abs=1e-6)


@given(st.floats(0.2, 5.0))
def test_cut_scaling(t):
    dom = two_hole_disk()
    a, b = heuristic_min_cut(dom), heuristic_min_cut(dom.scaled(t))
    assert sorted(b.lengths) == pytest.approx(sorted(t * h for h in a.lengths), rel=1e-9)
    assert a.scaled(t).total == pytest.approx(b.total, rel=1e-9)


def test_holes_and_punctures_mixed():
    dom = PlanarDomain(Circle((0, 0), 1), (Circle((0.4, 0), 0.2),), ((-0.5, 0.1), (-0.2, -0.5)))
    cut = heuristic_min_cut(dom)
    assert len(cut) == 3
    assert is_admissible(dom, cut)
    assert raster_simply_connected(dom, cut)


def test_cut_json_round_trip():
    cut = omega_k_reference_cut(2)
    d = cut.to_dict()
    assert set(d) == {"segments", "total"}
    assert cutset_from_dict(d) == cut
    assert heuristic_min_cut(make_annulus(0.5, 1)).total == math.fsum(
        heuristic_min_cut(make_annulus(0.5, 1)).lengths)


def test_simply_connected_has_nothing_to_cut():
    with pytest.raises(ValueError):
        heuristic_min_cut(make_disk())
