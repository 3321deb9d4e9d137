"""Two-pursuer classification, equal-time point and arc barrier."""
from dataclasses import dataclass

import numpy as np

from ._validation import check_point
from .exceptions import CoincidentPursuers, EvaderNotInPlay, NotBothActive
from .geometry import EPS_GEO, dist_point_segment_2d, union_margin
from .pieces import ArcPiece, PointPiece

BOTH_ACTIVE = "BothActive"
SINGLE_ACTIVE = "SingleActive"
EMPTY_BARRIER = "EmptyBarrier"


@dataclass(frozen=True)
class PairClass:
    """``index`` is 0 or 1 (argument position) for ``SingleActive``, else None."""

    tag: str
    index: int = None


def classify_pair(p_i, p_j, eps=EPS_GEO):
    p_i = check_point(p_i, "p_i")
    p_j = check_point(p_j, "p_j")
    d2 = (p_i[0] - p_j[0]) ** 2 + (p_i[1] - p_j[1]) ** 2
    if d2 > eps * eps:
        return PairClass(BOTH_ACTIVE)
    zi, zj = abs(p_i[2]), abs(p_j[2])
    if abs(zi - zj) > eps:
        return PairClass(SINGLE_ACTIVE, 0 if zi < zj else 1)
    if abs(p_i[2] - p_j[2]) > eps:
        return PairClass(EMPTY_BARRIER)
    raise CoincidentPursuers(f"pursuers coincide at {p_i.tolist()}")


def _require_both_active(p_i, p_j, eps):
    cls = classify_pair(p_i, p_j, eps)
    if cls.tag != BOTH_ACTIVE:
        raise NotBothActive(f"pair is {cls.tag}: projections coincide")


def _line_parameter(p_i, p_j):
    """Parameter ``s`` of the equal-time point along ``proj(p_i) -> proj(p_j)``."""
    d = p_j[:2] - p_i[:2]
    L = d @ d
    return 0.5 + (p_j[2] ** 2 - p_i[2] ** 2) / (2.0 * L)


def equal_time_point(p_i, p_j, eps=EPS_GEO):
    """Point of the target plane that both pursuers reach at the same time.

    Restricted to the line through the two projections, the equidistance
    condition is linear in the line parameter.
    """
    p_i = check_point(p_i, "p_i")
    p_j = check_point(p_j, "p_j")
    _require_both_active(p_i, p_j, eps)
    s = _line_parameter(p_i, p_j)
    xy = p_i[:2] + s * (p_j[:2] - p_i[:2])
    return np.array([xy[0], xy[1], 0.0])


def pair_circle(p_i, p_j, eps=EPS_GEO):
    """Centre and radius of the vertical circle through both pursuers."""
    c = equal_time_point(p_i, p_j, eps)
    r_i = float(np.linalg.norm(np.asarray(p_i, float) - c))
    r_j = float(np.linalg.norm(np.asarray(p_j, float) - c))
    assert abs(r_i - r_j) <= 1e-9 * (1.0 + r_i), (r_i, r_j)
    return c, r_i


def pair_barrier(p_i, p_j, eps=EPS_GEO, source=(0, 1)):
    """Point pieces of pursuers below the plane plus the open arc between them."""
    from .triple import single_barrier

    p_i = check_point(p_i, "p_i")
    p_j = check_point(p_j, "p_j")
    c, r = pair_circle(p_i, p_j, eps)
    pieces = []
    for p, k in ((p_i, source[0]), (p_j, source[1])):
        piece = single_barrier(p, source=(k,))
        if isinstance(piece, PointPiece):
            pieces.append(piece)
    pieces.append(ArcPiece(c, r, p_i[:2], p_j[:2], source=tuple(source)))
    return pieces


def pair_region(p_i, p_j, q, eps=EPS_GEO):
    """``(horizontal distance to the segment, |q - c| - r)`` for query ``q``."""
    q = np.asarray(q, dtype=float)
    c, r = pair_circle(p_i, p_j, eps)
    return dist_point_segment_2d(q, p_i, p_j), float(np.linalg.norm(q - c) - r)


def pair_region_margin(p_i, p_j, q, eps=EPS_GEO):
    """Signed membership of ``q`` in the pair's pursuer-winning region.

    Inside the vertical strip over the closed segment it is ``|q - c| - r``.
    Outside it is minus the horizontal distance to the segment. Positive
    means pursuers win.
    """
    return union_margin([pair_region(p_i, p_j, q, eps)], eps)


def pair_pursuer_region_contains(p_i, p_j, q, eps=EPS_GEO):
    q = check_point(q, "q")
    if q[2] <= 0:
        raise EvaderNotInPlay(f"query z={q[2]} must be positive")
    _require_both_active(p_i, p_j, eps)
    return pair_region_margin(p_i, p_j, q, eps) > 0.0
