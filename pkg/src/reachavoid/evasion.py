"""Evasion spaces and the numeric escape-margin oracle.

The escape margin of a target-plane point ``t`` is::

    g(t) = min_k |t - p_k| - |t - e|

It is positive exactly when the evader reaches ``t`` strictly before every
pursuer. The evader wins iff ``sup_T g > 0``. :func:`escape_margin_supremum`
estimates that supremum by brute-force grid search. It never looks at the
closed-form barrier, so it can be used to check it.
"""
from dataclasses import dataclass

import numba
import numpy as np
from scipy.ndimage import maximum_filter

from ._validation import check_point, check_points
from .exceptions import CoincidentPlayers, EmptyPursuerSet, EvaderNotInPlay, NonPositiveExtent
from .geometry import EPS_GEO

#: Bound on how far g can rise between lattice points, per unit cell width.
_LIP = 2.0 * np.sqrt(2.0)

#: Sign band used when mapping oracle suprema to win/lose/barrier.
EPS_MARGIN = 1e-6


@dataclass(frozen=True)
class BisectorPlane:
    """Plane ``normal . z = offset``; ``normal`` points from evader to pursuer."""

    normal: np.ndarray
    offset: float

    def signed_distance(self, q):
        """Negative on the evader (evasion-space) side."""
        return np.asarray(q, dtype=float) @ self.normal - self.offset


def bisector_plane(evader, pursuer):
    e = check_point(evader, "evader")
    p = check_point(pursuer, "pursuer")
    d = p - e
    length = np.linalg.norm(d)
    if length <= EPS_GEO:
        raise CoincidentPlayers(f"evader and pursuer coincide at {e.tolist()}")
    normal = d / length
    return BisectorPlane(normal, float(normal @ (0.5 * (e + p))))


def escape_margin(t, evader, pursuers):
    """``min_k |t - p_k| - |t - e|``; ``t`` may be a single point or (..., 3)."""
    P = np.asarray(pursuers, dtype=float).reshape(-1, 3)
    if len(P) == 0:
        raise EmptyPursuerSet("escape margin needs at least one pursuer")
    t = np.asarray(t, dtype=float)
    e = np.asarray(evader, dtype=float)
    d_e = np.linalg.norm(t - e, axis=-1)
    d_p = np.min(np.linalg.norm(t[..., None, :] - P, axis=-1), axis=-1)
    out = d_p - d_e
    return float(out) if np.ndim(out) == 0 else out


@numba.njit(cache=True)
def _margin_at(x, y, e, P):
    best = np.inf
    for k in range(P.shape[0]):
        ax = x - P[k, 0]
        ay = y - P[k, 1]
        d = np.sqrt(ax * ax + ay * ay + P[k, 2] * P[k, 2])
        if d < best:
            best = d
    dx = x - e[0]
    dy = y - e[1]
    return best - np.sqrt(dx * dx + dy * dy + e[2] * e[2])


@numba.njit(cache=True)
def _lattice(x0, y0, span, grid, e, P):
    g = np.linspace(-span, span, grid)
    vals = np.empty((grid, grid))
    for i in range(grid):
        for j in range(grid):
            vals[i, j] = _margin_at(x0 + g[i], y0 + g[j], e, P)
    return x0 + g, y0 + g, vals


@numba.njit(cache=True)
def _refine_level(centres, half, refine_grid, lo_x, hi_x, lo_y, hi_y, e, P):
    """Best lattice point of each clipped window; ties go to the smaller (x, y)."""
    u = np.linspace(-1.0, 1.0, refine_grid)
    m = centres.shape[0]
    out = np.empty((m, 3))
    for c in range(m):
        cx = min(max(centres[c, 0], lo_x + half), hi_x - half)
        cy = min(max(centres[c, 1], lo_y + half), hi_y - half)
        bv = -np.inf
        bx = 0.0
        by = 0.0
        for i in range(refine_grid):
            x = cx + half * u[i]
            for j in range(refine_grid):
                y = cy + half * u[j]
                v = _margin_at(x, y, e, P)
                if v > bv or (v == bv and (x < bx or (x == bx and y < by))):
                    bv = v
                    bx = x
                    by = y
        out[c, 0] = bv
        out[c, 1] = bx
        out[c, 2] = by
    return out


@dataclass(frozen=True)
class MarginReport:
    supremum: float
    witness: np.ndarray
    resolved: bool
    extent: float

    @property
    def evader_wins(self):
        return self.supremum > 0.0


def auto_extent(evader, pursuers):
    e = np.asarray(evader, dtype=float)
    P = np.asarray(pursuers, dtype=float).reshape(-1, 3)
    return 10.0 * (float(np.max(np.linalg.norm(P - e, axis=1))) + 1.0)


def _best(values, xs, ys):
    """Max with a lexicographically-smallest-witness tie break."""
    vmax = values.max()
    idx = np.flatnonzero(values == vmax)
    if len(idx) > 1:
        tx, ty = xs.ravel()[idx], ys.ravel()[idx]
        idx = idx[tx == tx.min()]
        idx = idx[np.argmin(ys.ravel()[idx])]
    k = int(np.atleast_1d(idx)[0])
    return float(vmax), float(xs.ravel()[k]), float(ys.ravel()[k])


def _local_slope(xs, ys, e, P):
    """Half the largest ``|grad d_k - grad d_e|`` over pursuers, in [0, 1].

    Scales the global Lipschitz bound down where every pursuer's distance
    changes like the evader's, which is the case far from all players.
    """
    tx = np.asarray(xs, float)[..., None]
    ty = np.asarray(ys, float)[..., None]
    ax, ay = tx - P[:, 0], ty - P[:, 1]
    dp = np.sqrt(ax * ax + ay * ay + P[:, 2] ** 2)
    bx, by = tx - e[0], ty - e[1]
    de = np.sqrt(bx * bx + by * by + e[2] ** 2)
    diff = np.hypot(ax / dp - bx / de, ay / dp - by / de)
    return np.minimum(1.0, 0.5 * diff.max(axis=-1) + 1e-3)


@numba.njit(cache=True)
def _model_min(a, gx, gy, dx, dy):
    m = np.inf
    for k in range(a.shape[0]):
        v = a[k] + gx[k] * dx + gy[k] * dy
        if v < m:
            m = v
    return m


@numba.njit(cache=True)
def _ascend(x, y, e, P, rho, xlim, ylim, tol, max_iter):
    """Trust-region ascent on the linearised margin.

    Each step linearises every term ``|t - p_k| - |t - e|`` and maximises
    their minimum over the box ``|delta| <= rho``. That model is concave and
    piecewise linear, so its maximum sits at a box corner, where a pairwise
    tie line meets the box edge, or where three terms tie. All of those are
    enumerated. Kinked peaks where several pursuers tie are reached in a
    few steps, which plain lattice refinement cannot do on thin ridges.
    """
    n = P.shape[0]
    a = np.empty(n)
    gx = np.empty(n)
    gy = np.empty(n)
    cur = _margin_at(x, y, e, P)
    for _ in range(max_iter):
        if rho < tol:
            break
        bx = x - e[0]
        by = y - e[1]
        de = np.sqrt(bx * bx + by * by + e[2] * e[2])
        for k in range(n):
            ax = x - P[k, 0]
            ay = y - P[k, 1]
            dk = np.sqrt(ax * ax + ay * ay + P[k, 2] * P[k, 2])
            a[k] = dk - de
            gx[k] = ax / dk - bx / de
            gy[k] = ay / dk - by / de
        lim = rho * (1.0 + 1e-12)
        bm = -np.inf
        bdx = 0.0
        bdy = 0.0
        for sx in (-rho, rho):
            for sy in (-rho, rho):
                m = _model_min(a, gx, gy, sx, sy)
                if m > bm:
                    bm, bdx, bdy = m, sx, sy
        for i in range(n):
            for j in range(i + 1, n):
                cx = gx[i] - gx[j]
                cy = gy[i] - gy[j]
                r = a[j] - a[i]
                for side in (-rho, rho):
                    if cy != 0.0:
                        dy = (r - cx * side) / cy
                        if abs(dy) <= lim:
                            m = _model_min(a, gx, gy, side, dy)
                            if m > bm:
                                bm, bdx, bdy = m, side, dy
                    if cx != 0.0:
                        dx = (r - cy * side) / cx
                        if abs(dx) <= lim:
                            m = _model_min(a, gx, gy, dx, side)
                            if m > bm:
                                bm, bdx, bdy = m, dx, side
                for k in range(j + 1, n):
                    ex = gx[i] - gx[k]
                    ey = gy[i] - gy[k]
                    det = cx * ey - cy * ex
                    if det == 0.0:
                        continue
                    rk = a[k] - a[i]
                    dx = (r * ey - cy * rk) / det
                    dy = (cx * rk - r * ex) / det
                    if abs(dx) <= lim and abs(dy) <= lim:
                        m = _model_min(a, gx, gy, dx, dy)
                        if m > bm:
                            bm, bdx, bdy = m, dx, dy
        if bm - cur <= 1e-15 * (1.0 + abs(cur)):
            break
        nx = min(max(x + bdx, xlim[0]), xlim[1])
        ny = min(max(y + bdy, ylim[0]), ylim[1])
        new = _margin_at(nx, ny, e, P)
        if new > cur:
            x, y, cur = nx, ny, new
        else:
            rho *= 0.25
    return cur, x, y


def _better(a, b):
    return a[0] > b[0] or (a[0] == b[0] and (a[1], a[2]) < (b[1], b[2]))


def escape_margin_supremum(evader, pursuers, grid=201, extent=None, levels=8,
                           refine_grid=41, starts=12, shrink=0.1, widen=3):
    """Grid-search estimate of ``sup_T g``.

    Two ``grid x grid`` lattices are centred on the evader's projection:
    one of half-width ``extent`` and one ``shrink`` times smaller. Their
    best interior local maxima (``starts`` per lattice) and the two best
    outer-rim maxima are refined ``levels`` times. Each level lays a
    ``refine_grid`` lattice over a window ``shrink`` times smaller than the
    last, centred on the incumbent and clipped to the search square. Every
    start and every survivor is also pushed uphill by a trust-region ascent
    on the linearised margin, which reaches kinked peaks on thin ridges.

    ``resolved`` is False when the witness lies within one outer cell of
    the edge of the search square. The supremum is then probably approached
    only at infinity and the value is a truncated lower bound. A positive
    value still certifies that the evader wins. With the automatic extent,
    a non-positive edge witness triggers up to ``widen`` searches over
    squares ``1/shrink`` times larger, since nearly collinear pursuers put
    their equal-time points far away. Widening stops at the first larger
    square that does not raise the supremum.
    """
    e = check_point(evader, "evader")
    P = np.asarray(pursuers, dtype=float).reshape(-1, 3)
    if len(P) == 0:
        raise EmptyPursuerSet("oracle needs at least one pursuer")
    P = check_points(P, "pursuers")
    if e[2] <= 0.0:
        raise EvaderNotInPlay(f"evader z={e[2]} must be positive")
    auto = extent is None
    if auto:
        extent = auto_extent(e, P)
    if not extent > 0.0:
        raise NonPositiveExtent(f"extent must be positive, got {extent}")
    if levels < 0 or grid < 3 or refine_grid < 3:
        raise ValueError("grid/refine_grid must be >= 3 and levels >= 0")

    args = (grid, levels, refine_grid, starts, shrink)
    report = _search(e, P, float(extent), *args)
    for _ in range(widen if auto else 0):
        if report.resolved or report.supremum > 0:
            break
        extent = extent / shrink
        wider = _search(e, P, float(extent), *args)
        # no gain from a ten-fold square means g is flat or still rising at infinity
        if wider.supremum <= report.supremum:
            break
        report = wider
    return report


def _search(e, P, extent, grid, levels, refine_grid, starts, shrink):
    x0, y0 = e[0], e[1]
    lo_x, hi_x = x0 - extent, x0 + extent
    lo_y, hi_y = y0 - extent, y0 + extent

    # Two coarse lattices: the whole square, and one ``shrink`` times smaller
    # where the players are. Sharp peaks at equal-time points are narrower
    # than an outer cell and would otherwise lose to the flat far field.
    best = None
    centres = []
    for level, span in enumerate((extent, shrink * extent)):
        gx, gy, vals = _lattice(x0, y0, span, grid, e, P)
        xs, ys = np.meshgrid(gx, gy, indexing="ij")
        cand = _best(vals, xs, ys)
        if best is None or _better(cand, best):
            best = cand
        # Candidate basins are coarse local maxima ranked by how high g could
        # rise within a cell of them. Far from the players g is nearly flat
        # and full of shallow ridges, while a peak at an equal-time point is
        # steep, so ranking by value alone would starve the peak. The outer
        # rim gets two starts of its own.
        peaks = vals >= maximum_filter(vals, size=3, mode="nearest")
        rim = np.zeros_like(peaks)
        rim[[0, -1], :] = True
        rim[:, [0, -1]] = True
        groups = [(peaks & ~rim, starts)]
        if level == 0:
            groups.append((peaks & rim, 2))
        cell = 2.0 * span / (grid - 1)
        for mask, count in groups:
            pv, px, py = vals[mask], xs[mask], ys[mask]
            if len(pv) > 64 * count:
                # plateaus make every node a tied peak; rank only the highest
                keep = np.sort(np.argpartition(-pv, 64 * count)[:64 * count])
                pv, px, py = pv[keep], px[keep], py[keep]
            ub = pv + _local_slope(px, py, e, P) * _LIP * cell
            order = np.lexsort((py, px, -ub))[:count]
            centres.append(np.column_stack([ub[order], px[order], py[order],
                                            np.full(len(order), cell)]))
    centres = np.concatenate(centres)
    centres = centres[centres[:, 0] >= best[0], 1:]

    xlim, ylim = (lo_x, hi_x), (lo_y, hi_y)
    tol = 1e-13 * (1.0 + extent)
    for x, y, cell in centres:
        cand = _ascend(x, y, e, P, cell, xlim, ylim, tol, 200)
        if _better(cand, best):
            best = cand
    centres = centres[:, :2]

    half = shrink * extent
    for _ in range(levels):
        half = min(half, extent)
        res = _refine_level(centres, half, refine_grid, lo_x, hi_x, lo_y, hi_y, e, P)
        current = np.array([_margin_at(x, y, e, P) for x, y in centres])
        # an incumbent pushed out of its clipped window survives if still better
        keep = res[:, 0] >= current
        centres = np.where(keep[:, None], res[:, 1:], centres)
        for v, x, y in res:
            if _better((v, x, y), best):
                best = (float(v), float(x), float(y))
        # g is 2-Lipschitz, so a window whose lattice maximum trails the best
        # by more than _LIP cell widths cannot hold the supremum
        cell = 2.0 * half / (refine_grid - 1)
        centres = centres[np.maximum(res[:, 0], current) + _LIP * cell >= best[0]]
        half = shrink * half

    cell = 2.0 * half / (refine_grid - 1)
    for x, y in centres:
        cand = _ascend(x, y, e, P, cell / shrink, xlim, ylim, tol, 200)
        if _better(cand, best):
            best = cand

    sup, wx, wy = best
    witness = np.array([wx, wy, 0.0])
    sup = float(_margin_at(wx, wy, e, P))
    # within one coarse cell of the edge counts as on it: near-edge ridges
    # let an interior row beat the clipped boundary row by a few fine steps
    edge = 2.0 * extent / (grid - 1)
    on_edge = (wx - lo_x <= edge or hi_x - wx <= edge or wy - lo_y <= edge or hi_y - wy <= edge)
    return MarginReport(sup, witness, not on_edge, extent)
