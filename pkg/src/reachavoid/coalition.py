"""Active pursuers, triple coalitions and the multi-pursuer barrier.

For ``n`` pursuers the barrier is assembled from the coalitions that shape
it. With fewer than three active pursuers, or when all active projections
are collinear, those are single pursuers and consecutive pairs. Otherwise
they are triples whose equal-time point ``c`` is reached by the three
strictly before every other active pursuer. Each triple contributes a
spherical cap, and together the triangles under the caps tile the convex
hull of the active projections.
"""
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull

from ._validation import check_point, check_points
from .exceptions import CoincidentPursuers, DegenerateConfiguration, DuplicatePlayers, EvaderNotInPlay
from .geometry import EPS_GEO, triangle_area_2d, union_margin
from .pair import pair_barrier, pair_region
from .pieces import dedupe
from .triple import cap_region, single_barrier, single_region, triple_barrier_noncollinear, triple_sphere

PURSUER_WIN = "PursuerWin"
EVADER_WIN = "EvaderWin"
ON_BARRIER = "OnBarrier"

#: Default half-width of the OnBarrier band on the analytic margin.
BAND = 1e-9


@dataclass(frozen=True)
class GameConfig:
    pursuers: np.ndarray
    evader: np.ndarray = None

    def __post_init__(self):
        P = check_points(self.pursuers, "pursuers")
        for a, b in combinations(range(len(P)), 2):
            if np.linalg.norm(P[a] - P[b]) <= EPS_GEO:
                raise DuplicatePlayers(f"pursuers {a} and {b} coincide at {P[a].tolist()}")
        object.__setattr__(self, "pursuers", P)
        if self.evader is not None:
            e = check_point(self.evader, "evader")
            if not e[2] > 0:
                raise EvaderNotInPlay(f"evader z={e[2]} is not in the play subspace")
            for k, p in enumerate(P):
                if np.linalg.norm(p - e) <= EPS_GEO:
                    raise DuplicatePlayers(f"evader coincides with pursuer {k}")
            object.__setattr__(self, "evader", e)


@dataclass(frozen=True)
class CoalitionSet:
    active: tuple
    triples: tuple = ()
    pairs: tuple = ()
    singles: tuple = ()


@dataclass(frozen=True)
class Verdict:
    tag: str
    margin: float
    details: str = ""


def _check_distinct(P, eps):
    for a, b in combinations(range(len(P)), 2):
        if np.linalg.norm(P[a] - P[b]) <= eps:
            raise CoincidentPursuers(f"pursuers {a} and {b} coincide")


def cell_radius(P, k, eps=EPS_GEO):
    """Inradius (capped at 1) of pursuer ``k``'s first-arrival cell on the plane.

    ``|t - p_k| < |t - p_m|`` is linear in ``t`` once squared, so the cell
    is an intersection of open half-planes. Its Chebyshev radius comes from
    a small LP. Returns 0 for an empty cell.
    """
    pk = P[k]
    rows, rhs = [], []
    for m, pm in enumerate(P):
        if m == k:
            continue
        a = 2.0 * (pm[:2] - pk[:2])
        beta = pm @ pm - pk @ pk
        na = np.linalg.norm(a)
        if na <= 2.0 * eps:
            if abs(pm[2]) - abs(pk[2]) <= eps:
                return 0.0
            continue
        rows.append(np.append(a / na, 1.0))
        rhs.append(beta / na)
    if not rows:
        return 1.0
    res = linprog(c=[0.0, 0.0, -1.0], A_ub=np.array(rows), b_ub=np.array(rhs),
                  bounds=[(None, None), (None, None), (None, 1.0)], method="highs",
                  options={"primal_feasibility_tolerance": 1e-10,
                           "dual_feasibility_tolerance": 1e-10})
    if res.status != 0:
        raise RuntimeError(f"active-pursuer LP failed: {res.message}")
    return max(float(-res.fun), 0.0)


def active_pursuers(pursuers, eps=EPS_GEO):
    """Indices of pursuers that reach some plane point strictly first."""
    P = check_points(pursuers, "pursuers")
    _check_distinct(P, eps)
    if len(P) == 1:
        return (0,)
    return tuple(k for k in range(len(P))
                 if _foot_slack(P, k) > eps or cell_radius(P, k, eps) > eps)


def _foot_slack(P, k):
    """How far ``p_k``'s own foot point lies inside its cell (negative if outside).

    A disc of that radius fits in the cell, so a positive slack already
    proves the pursuer active and the LP can be skipped.
    """
    others = np.delete(P, k, axis=0)
    a = 2.0 * (others[:, :2] - P[k, :2])
    na = np.linalg.norm(a, axis=1)
    if np.any(na <= 0.0):
        return -np.inf
    beta = np.einsum("ij,ij->i", others, others) - P[k] @ P[k]
    return float(np.min((beta - a @ P[k, :2]) / na))


def representatives(P, eps=EPS_GEO):
    """Drop the lower member of each mirror-image twin pair.

    Twins ``(x, y, z)`` and ``(x, y, -z)`` tie at every plane point, so
    neither is strictly first anywhere. They act as one pursuer, and the
    one in play stands in for both.
    """
    keep = []
    for k, p in enumerate(P):
        twin = any(m != k and np.hypot(*(P[m][:2] - p[:2])) <= eps
                   and abs(P[m][2] + p[2]) <= eps and P[m][2] > p[2]
                   for m in range(len(P)))
        if not twin:
            keep.append(k)
    return keep


def _collinear(P, idx, eps):
    if len(idx) < 3:
        return True
    a = idx[0]
    b = max(idx, key=lambda m: np.hypot(*(P[m][:2] - P[a][:2])))
    return all(triangle_area_2d(P[a], P[b], P[m]) <= eps for m in idx)


def _line_order(P, idx):
    xy = np.array([P[m][:2] for m in idx])
    spread = xy - xy.mean(axis=0)
    _, _, vt = np.linalg.svd(spread)
    t = spread @ vt[0]
    return [idx[m] for m in np.argsort(t, kind="stable")]


def active_triples(pursuers, active, eps=EPS_GEO):
    """Group the active pursuers into barrier coalitions."""
    P = check_points(pursuers, "pursuers")
    act = sorted(active)
    if len(act) == 1:
        return CoalitionSet(tuple(act), singles=tuple(act))
    if _collinear(P, act, eps):
        chain = _line_order(P, act)
        pairs = tuple(tuple(sorted(pair)) for pair in zip(chain, chain[1:]))
        return CoalitionSet(tuple(act), pairs=pairs)

    triples = []
    for tri in combinations(act, 3):
        if triangle_area_2d(*(P[m] for m in tri)) <= eps:
            continue
        c, r = triple_sphere(*(P[m] for m in tri), eps=eps)
        tie = None
        for m in act:
            if m in tri:
                continue
            gap = np.linalg.norm(c - P[m]) - r
            if gap < -eps:
                break
            if gap <= eps:
                tie = m
        else:
            if tie is not None:
                raise DegenerateConfiguration(
                    "four active pursuers are equidistant from one plane point",
                    quadruple=tri + (tie,))
            triples.append(tri)

    hull_area = ConvexHull(np.array([P[m][:2] for m in act])).volume
    covered = sum(triangle_area_2d(*(P[m] for m in tri)) for tri in triples)
    if abs(covered - hull_area) > 1e-9 * (1.0 + hull_area):
        raise DegenerateConfiguration("coalition triangles do not tile the active hull",
                                      hull_area=hull_area, covered=covered,
                                      triples=triples)
    return CoalitionSet(tuple(act), triples=tuple(triples))


@dataclass
class BarrierModel:
    """Coalitions, barrier pieces and winning-region tests for fixed pursuers."""

    pursuers: np.ndarray
    coalitions: CoalitionSet
    eps: float = EPS_GEO
    pieces: list = field(default_factory=list)

    def __post_init__(self):
        P = self.pursuers
        pieces = []
        for tri in self.coalitions.triples:
            pieces.append(triple_barrier_noncollinear(*(P[m] for m in tri), eps=self.eps,
                                                      source=tri))
        for i, j in self.coalitions.pairs:
            pieces += pair_barrier(P[i], P[j], self.eps, source=(i, j))
        for i in self.coalitions.singles:
            pieces.append(single_barrier(P[i], source=(i,)))
        self.pieces = dedupe(pieces)

    def regions(self, q):
        """``(label, (distance, gap))`` for every coalition's winning region."""
        P = self.pursuers
        out = []
        for tri in self.coalitions.triples:
            out.append((f"cap{tri}", cap_region(*(P[m] for m in tri), q, eps=self.eps)))
        for i, j in self.coalitions.pairs:
            out.append((f"arc{(i, j)}", pair_region(P[i], P[j], q, self.eps)))
        for i in self.coalitions.singles:
            out.append((f"point({i},)", single_region(P[i], q)))
        return out

    def margin(self, q):
        """Signed analytic margin: positive inside the pursuer-winning region."""
        return union_margin([r for _, r in self.regions(q)], self.eps)

    def verdict(self, q, band=BAND):
        q = check_point(q, "evader")
        if not q[2] > 0:
            raise EvaderNotInPlay(f"evader z={q[2]} is not in the play subspace")
        regions = self.regions(q)
        m = union_margin([r for _, r in regions], self.eps)
        held = [(gap, label) for label, (dist, gap) in regions if dist <= self.eps]
        if held:
            label = max(held)[1]
        else:
            label = min((dist, label) for label, (dist, _) in regions)[1]
        if abs(m) <= band:
            tag = ON_BARRIER
        elif m > 0:
            tag = PURSUER_WIN
        else:
            tag = EVADER_WIN
        return Verdict(tag, float(m), label)


def build_model(pursuers, eps=EPS_GEO):
    """Run the active-pursuer and coalition steps and assemble the barrier."""
    P = check_points(pursuers, "pursuers")
    _check_distinct(P, eps)
    reps = representatives(P, eps)
    sub = P[reps]
    act = [reps[k] for k in active_pursuers(sub, eps)]
    coalitions = active_triples(P, act, eps)
    return BarrierModel(P, coalitions, eps)


def multi_barrier(config, eps=EPS_GEO):
    if not isinstance(config, GameConfig):
        config = GameConfig(config)
    return build_model(config.pursuers, eps).pieces


def classify_initial_state(config, band=BAND, eps=EPS_GEO):
    if config.evader is None:
        raise EvaderNotInPlay("configuration has no evader")
    return build_model(config.pursuers, eps).verdict(config.evader, band)
