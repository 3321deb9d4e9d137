import numpy as np
import pytest

from reachavoid.evasion import escape_margin, escape_margin_supremum
from reachavoid.exceptions import CollinearProjections, NotCollinearCase
from reachavoid.pieces import EMPTY, ArcPiece, PointPiece
from reachavoid.triple import (ONE, THREE, THREE_COLLINEAR, TWO, classify_triple,
                               equidistant_point, single_barrier, single_pursuer_region_contains,
                               triple_barrier_collinear, triple_barrier_noncollinear,
                               triple_pursuer_region_contains)

CAP = [[1, 0, 1], [-1, 0, 1], [0, 2, 1]]


def first_arrival_owners(P, half=6.0, n=401):
    xs = np.linspace(-half, half, n)
    X, Y = np.meshgrid(xs, xs)
    T = np.stack([X.ravel(), Y.ravel(), np.zeros(X.size)], axis=1)
    D = np.linalg.norm(T[:, None, :] - np.asarray(P, float)[None], axis=2)
    D.sort(axis=1)
    owner = np.argmin(np.linalg.norm(T[:, None, :] - np.asarray(P, float)[None], axis=2), axis=1)
    strict = D[:, 0] < D[:, 1] - 1e-12
    return set(owner[strict].tolist())


def test_single_barrier():
    piece = single_barrier([1, 2, -3])
    assert isinstance(piece, PointPiece)
    np.testing.assert_allclose(piece.location, [1, 2, 3])
    assert single_barrier([1, 2, 3]) is EMPTY
    assert single_barrier([0, 0, 0]) is EMPTY


@pytest.mark.parametrize("q,inside", [([1, 2, 4], True), ([1, 2, 2], False), ([0, 0, 10], False)])
def test_single_region(q, inside):
    assert single_pursuer_region_contains([1, 2, -3], q) is inside


def test_stacked_pursuers_reduce_to_lowest():
    c = classify_triple([0, 0, 1], [0, 0, 2], [0, 0, 3])
    assert (c.tag, c.indices) == (ONE, (0,))


def test_high_pursuer_over_pair_is_dropped():
    P = [[0, 0, 1], [2, 0, 1], [1, 0, 50]]
    c = classify_triple(*P)
    assert (c.tag, c.indices) == (TWO, (0, 1))
    assert first_arrival_owners(P) == {0, 1}


def test_generic_triple_is_three():
    P = [[1, 0, 0.5], [-1, 1, 0.2], [0, -1, 1]]
    assert classify_triple(*P).tag == THREE
    assert first_arrival_owners(P) == {0, 1, 2}


def test_collinear_triple_reports_middle():
    P = [[0, 0, 1], [2, 0, 1], [1, 0, 1]]
    c = classify_triple(*P)
    assert (c.tag, c.indices) == (THREE_COLLINEAR, (2,))
    assert first_arrival_owners(P) == {0, 1, 2}


def test_equidistant_points():
    c = equidistant_point(*CAP)
    np.testing.assert_allclose(c, [0, 0.75, 0], atol=1e-12)
    for p in CAP:
        assert np.linalg.norm(c - p) == pytest.approx(np.sqrt(41) / 4)
    c = equidistant_point([1, 0, 1], [-1, 0, 1], [0, 1, 1])
    np.testing.assert_allclose(c, 0, atol=1e-12)
    with pytest.raises(CollinearProjections):
        equidistant_point([0, 0, 1], [1, 0, 2], [2, 0, 3])


def test_cap_piece_and_zero_margin_samples():
    cap = triple_barrier_noncollinear(*CAP)
    np.testing.assert_allclose(cap.center, [0, 0.75, 0], atol=1e-12)
    assert cap.radius == pytest.approx(1.6007810593582121)
    for q in cap.sample(50, seed=3):
        assert abs(escape_margin_supremum(q, CAP).supremum) < 1e-4


def test_equilateral_cap():
    ang = np.deg2rad([90, 210, 330])
    P = [[np.cos(a), np.sin(a), 1.0] for a in ang]
    cap = triple_barrier_noncollinear(*P)
    np.testing.assert_allclose(cap.center, 0, atol=1e-12)
    assert cap.radius == pytest.approx(np.sqrt(2))
    with pytest.raises(CollinearProjections):
        triple_barrier_noncollinear([0, 0, 1], [2, 0, 1], [1, 0, 1])


def test_collinear_barrier_is_two_arcs():
    P = [[0, 0, 1], [2, 0, 1], [1, 0, 1]]
    pieces = triple_barrier_collinear(*P, middle=2)
    assert len(pieces) == 2 and all(isinstance(p, ArcPiece) for p in pieces)
    assert {tuple(sorted(p.source)) for p in pieces} == {(0, 2), (1, 2)}
    with pytest.raises(NotCollinearCase):
        triple_barrier_collinear(*P, middle=0)


@pytest.mark.parametrize("q,inside", [([0, 0.75, 2], True), ([0, 0.75, 1], False),
                                      ([10, 10, 5], False)])
def test_triple_region_against_oracle(q, inside):
    assert triple_pursuer_region_contains(*CAP, q) is inside
    rep = escape_margin_supremum(q, CAP)
    if inside:
        assert rep.supremum < 0
    else:
        assert rep.supremum > 0 and escape_margin(rep.witness, q, CAP) > 0
