import numpy as np
import pytest
from hypothesis import given, strategies as st

from reachavoid.evasion import escape_margin_supremum
from reachavoid.exceptions import CoincidentPursuers, NotBothActive
from reachavoid.pair import (BOTH_ACTIVE, EMPTY_BARRIER, SINGLE_ACTIVE, classify_pair,
                             equal_time_point, pair_barrier, pair_circle,
                             pair_pursuer_region_contains)
from reachavoid.pieces import ArcPiece, PointPiece

coord = st.floats(-5, 5, allow_nan=False)


def test_classification_branches():
    assert classify_pair([0, 0, 1], [1, 0, 1]).tag == BOTH_ACTIVE
    c = classify_pair([0, 0, 1], [0, 0, 2])
    assert (c.tag, c.index) == (SINGLE_ACTIVE, 0)
    assert classify_pair([0, 0, 1], [0, 0, -1]).tag == EMPTY_BARRIER
    with pytest.raises(CoincidentPursuers):
        classify_pair([1, 1, 1], [1, 1, 1])


@pytest.mark.parametrize("p_i,p_j,c", [([0, 0, 1], [2, 0, 1], [1, 0, 0]),
                                       ([0, 0, 1], [4, 0, 3], [3, 0, 0]),
                                       ([0, 1, 2], [0, -1, 2], [0, 0, 0])])
def test_equal_time_points(p_i, p_j, c):
    got = equal_time_point(p_i, p_j)
    np.testing.assert_allclose(got, c, atol=1e-12)
    assert np.linalg.norm(got - p_i) == pytest.approx(np.linalg.norm(got - p_j))


def test_equal_time_point_known_distance():
    c = equal_time_point([0, 0, 1], [4, 0, 3])
    assert np.linalg.norm(c - [0, 0, 1]) == pytest.approx(np.sqrt(10))


def test_arc_between_pursuers_above_plane():
    pieces = pair_barrier([0, 0, 1], [2, 0, 1])
    assert len(pieces) == 1 and isinstance(pieces[0], ArcPiece)
    np.testing.assert_allclose(pieces[0].center, [1, 0, 0])
    assert pieces[0].radius == pytest.approx(np.sqrt(2))
    for q in pieces[0].sample(5):
        assert abs(escape_margin_supremum(q, [[0, 0, 1], [2, 0, 1]]).supremum) < 1e-5


def test_pursuer_below_plane_adds_point_piece():
    pieces = pair_barrier([0, 0, -1], [2, 0, 1])
    points = [p for p in pieces if isinstance(p, PointPiece)]
    arcs = [p for p in pieces if isinstance(p, ArcPiece)]
    assert len(points) == 1 and len(arcs) == 1
    np.testing.assert_allclose(points[0].location, [0, 0, 1])
    np.testing.assert_allclose(arcs[0].center, [1, 0, 0])
    assert arcs[0].radius == pytest.approx(np.sqrt(2))


def test_shared_projection_is_not_a_pair():
    with pytest.raises(NotBothActive):
        pair_barrier([0, 0, 1], [0, 0, 2])


@pytest.mark.parametrize("q,inside", [([1, 0, 2], True), ([1, 0, 1], False), ([5, 0, 10], False)])
def test_region_membership_against_oracle(q, inside):
    P = [[0, 0, 1], [2, 0, 1]]
    assert pair_pursuer_region_contains(*P, q) is inside
    sup = escape_margin_supremum(q, P).supremum
    assert (sup < 0) == inside


@given(coord, coord, coord, coord, coord, coord)
def test_circle_passes_through_mirror_heights(x1, y1, z1, x2, y2, z2):
    p_i, p_j = np.array([x1, y1, z1]), np.array([x2, y2, z2])
    if np.hypot(x1 - x2, y1 - y2) < 1e-3:
        return
    c, r = pair_circle(p_i, p_j)
    for p in (p_i, p_j):
        assert np.linalg.norm([p[0] - c[0], p[1] - c[1], abs(p[2])]) == pytest.approx(r, rel=1e-9)
