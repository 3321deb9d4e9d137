"""Single-pursuer and three-pursuer barriers and classification."""
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ._validation import check_point
from .exceptions import (CollinearProjections, CoincidentPursuers, DegenerateConfiguration,
                         EvaderNotInPlay, NotCollinearCase)
from .geometry import EPS_GEO, dist_point_triangle_2d, mirror_height, triangle_area_2d, union_margin
from .pair import BOTH_ACTIVE, classify_pair, pair_barrier, pair_region, pair_region_margin
from .pieces import EMPTY, CapPiece, PointPiece, dedupe

ONE = "One"
TWO = "Two"
THREE = "Three"
THREE_COLLINEAR = "ThreeCollinear"


def single_barrier(p, source=(0,)):
    p = check_point(p, "p")
    if p[2] < 0:
        return PointPiece(np.array([p[0], p[1], -p[2]]), source=tuple(source))
    return EMPTY


def single_region(p, q):
    """``(horizontal offset from the ray, height above |z_p|)``."""
    p = np.asarray(p, float)
    q = np.asarray(q, float)
    return float(np.hypot(q[0] - p[0], q[1] - p[1])), float(q[2] - abs(p[2]))


def single_region_margin(p, q, eps=EPS_GEO):
    """Positive on the ray above ``(x_p, y_p, |z_p|)``; ``-horizontal offset`` off it."""
    return union_margin([single_region(p, q)], eps)


def single_pursuer_region_contains(p, q, eps=EPS_GEO):
    p = check_point(p, "p")
    q = check_point(q, "q")
    if q[2] <= 0:
        raise EvaderNotInPlay(f"query z={q[2]} must be positive")
    return single_region_margin(p, q, eps) > 0.0


@dataclass(frozen=True)
class TripleClass:
    """``indices`` are argument positions (0, 1, 2).

    ``One``: the single pursuer that matters; ``Two``: the relevant pair;
    ``Three``: empty tuple; ``ThreeCollinear``: the middle pursuer.
    """

    tag: str
    indices: tuple = ()


def _in_pair_region(p_i, p_j, p_k, eps):
    """Whether ``p_k`` or its reflection lies in the pair's winning region.

    Of the two candidates only ``(x, y, |z|)`` can be in play. Returns None
    when it sits on the arc's circle within ``eps`` (a tie).
    """
    q = mirror_height(p_k)
    if q[2] <= 0:
        return False
    m = pair_region_margin(p_i, p_j, q, eps)
    if m > eps:
        return True
    if m >= -eps:
        return None
    return False


def classify_triple(p1, p2, p3, eps=EPS_GEO):
    """Which of the three pursuers shape the barrier.

    Follows the three-pursuer classification conditions verbatim, with
    ``eps`` equality tests. Configurations that match no branch raise
    :class:`DegenerateConfiguration` rather than picking one.
    """
    P = [check_point(p, f"p{k + 1}") for k, p in enumerate((p1, p2, p3))]
    for a, b in combinations(range(3), 2):
        if np.linalg.norm(P[a] - P[b]) <= eps:
            raise CoincidentPursuers(f"pursuers {a} and {b} coincide")

    def same_xy(a, b):
        return np.hypot(*(P[a][:2] - P[b][:2])) <= eps

    for i in range(3):
        others = [k for k in range(3) if k != i]
        if all(same_xy(i, k) and abs(P[i][2]) < abs(P[k][2]) - eps for k in others):
            return TripleClass(ONE, (i,))

    both = {pair: classify_pair(P[pair[0]], P[pair[1]], eps).tag == BOTH_ACTIVE
            for pair in combinations(range(3), 2)}
    membership = {}
    for (i, j), ok in both.items():
        if ok:
            k = 3 - i - j
            membership[(i, j)] = _in_pair_region(P[i], P[j], P[k], eps)

    ties = [pair for pair, m in membership.items() if m is None]
    if ties:
        raise DegenerateConfiguration("third pursuer lies on a pair circle", pairs=ties)

    if all(both.values()) and not any(membership.values()):
        mid = _collinear_middle(P, eps)
        if mid is not None:
            return TripleClass(THREE_COLLINEAR, (mid,))
        return TripleClass(THREE)

    twos = [pair for pair, m in membership.items() if m]
    # mirror-twin fallback: x_i = x_k, z_i = -z_k > 0 and x_i outside the ray above p_j
    for i in range(3):
        for k in range(3):
            if k == i or not same_xy(i, k):
                continue
            if not (P[i][2] > eps and abs(P[i][2] + P[k][2]) <= eps):
                continue
            j = 3 - i - k
            if single_region_margin(P[j], P[i], eps) <= 0.0:
                twos.append(tuple(sorted((i, j))))
    twos = sorted(set(twos))
    if len(twos) == 1:
        return TripleClass(TWO, twos[0])
    raise DegenerateConfiguration("no classification branch applies", candidates=twos,
                                  pursuers=[p.tolist() for p in P])


def _collinear_middle(P, eps):
    """Index of the middle projection if the three projections are collinear."""
    if triangle_area_2d(*P) > eps:
        return None
    xy = np.array([p[:2] for p in P])
    spread = xy - xy.mean(axis=0)
    _, _, vt = np.linalg.svd(spread)
    t = spread @ vt[0]
    order = np.argsort(t)
    return int(order[1])


def equidistant_point(p1, p2, p3, eps=EPS_GEO):
    """Plane point at equal distance from all three pursuers."""
    P = [check_point(p, f"p{k + 1}") for k, p in enumerate((p1, p2, p3))]
    if triangle_area_2d(*P) <= eps:
        raise CollinearProjections("pursuer projections are collinear")
    A = 2.0 * np.array([P[1][:2] - P[0][:2], P[2][:2] - P[0][:2]])
    rhs = np.array([P[1] @ P[1] - P[0] @ P[0], P[2] @ P[2] - P[0] @ P[0]])
    xy = np.linalg.solve(A, rhs)
    return np.array([xy[0], xy[1], 0.0])


def triple_sphere(p1, p2, p3, eps=EPS_GEO):
    c = equidistant_point(p1, p2, p3, eps)
    radii = [float(np.linalg.norm(np.asarray(p, float) - c)) for p in (p1, p2, p3)]
    assert max(radii) - min(radii) <= 1e-9 * (1.0 + max(radii)), radii
    return c, radii[0]


def triple_barrier_noncollinear(p1, p2, p3, eps=EPS_GEO, source=(0, 1, 2)):
    c, r = triple_sphere(p1, p2, p3, eps)
    tri = np.array([np.asarray(p, float)[:2] for p in (p1, p2, p3)])
    return CapPiece(c, r, tri, source=tuple(source))


def triple_barrier_collinear(p1, p2, p3, middle, eps=EPS_GEO, source=(0, 1, 2)):
    """Union of the two middle-outer pair barriers."""
    P = [check_point(p, f"p{k + 1}") for k, p in enumerate((p1, p2, p3))]
    if _collinear_middle(P, eps) != middle:
        raise NotCollinearCase(f"pursuer {middle} is not the collinear middle")
    pieces = []
    for k in range(3):
        if k != middle:
            pieces += pair_barrier(P[middle], P[k], eps, source=(source[middle], source[k]))
    return dedupe(pieces)


def triple_region_margin(p1, p2, p3, q, eps=EPS_GEO):
    """Signed membership of ``q`` in the three-pursuer winning region.

    Dispatches on :func:`classify_triple`, so reduced configurations fall
    back to the single-pursuer ray or the two-pursuer strip.
    """
    P = [np.asarray(p, float) for p in (p1, p2, p3)]
    q = np.asarray(q, float)
    cls = classify_triple(*P, eps=eps)
    if cls.tag == ONE:
        return single_region_margin(P[cls.indices[0]], q, eps)
    if cls.tag == TWO:
        i, j = cls.indices
        if classify_pair(P[i], P[j], eps).tag == BOTH_ACTIVE:
            return pair_region_margin(P[i], P[j], q, eps)
        # mirror-twin branch: the pair collapses onto one projection
        return union_margin([single_region(P[i], q), single_region(P[j], q)], eps)
    if cls.tag == THREE_COLLINEAR:
        mid = cls.indices[0]
        return union_margin([pair_region(P[mid], P[k], q, eps) for k in range(3) if k != mid], eps)
    return union_margin([cap_region(*P, q, eps=eps)], eps)


def cap_region(p1, p2, p3, q, eps=EPS_GEO):
    """``(horizontal distance to the triangle, |q - c| - r)``."""
    c, r = triple_sphere(p1, p2, p3, eps)
    q = np.asarray(q, float)
    return dist_point_triangle_2d(q, p1, p2, p3), float(np.linalg.norm(q - c) - r)


def triple_pursuer_region_contains(p1, p2, p3, q, eps=EPS_GEO):
    q = check_point(q, "q")
    if q[2] <= 0:
        raise EvaderNotInPlay(f"query z={q[2]} must be positive")
    return triple_region_margin(p1, p2, p3, q, eps) > 0.0

