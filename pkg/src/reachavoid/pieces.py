"""Barrier pieces: empty, isolated points, vertical arcs and spherical caps.

All pieces live in the canonical frame. ``source`` records which pursuers
produced the piece; geometric comparisons ignore it.
"""
from dataclasses import dataclass, field

import numpy as np

from .geometry import dist_point_triangle_2d


def _close(a, b, tol):
    return bool(np.all(np.abs(np.asarray(a, float) - np.asarray(b, float)) <= tol))


@dataclass(frozen=True)
class EmptyPiece:
    kind = "empty"
    source: tuple = ()

    def same_as(self, other, tol=1e-9):
        return isinstance(other, EmptyPiece)


EMPTY = EmptyPiece()


@dataclass(frozen=True, eq=False)
class PointPiece:
    """Isolated barrier point, the mirror image of a pursuer below the plane."""

    kind = "point"
    location: np.ndarray
    source: tuple = ()

    def __post_init__(self):
        loc = np.array(self.location, dtype=float)
        if not loc[2] > 0:
            raise ValueError(f"point piece must lie in play (z > 0), got {loc}")
        object.__setattr__(self, "location", loc)

    def sample(self, n=1):
        return np.repeat(self.location[None, :], max(n, 1), axis=0)

    def residual(self, q):
        return np.linalg.norm(np.asarray(q, float) - self.location, axis=-1)

    def same_as(self, other, tol=1e-9):
        return isinstance(other, PointPiece) and _close(self.location, other.location, tol)


@dataclass(frozen=True, eq=False)
class ArcPiece:
    """Circle arc in the vertical plane over the segment ``start -> end``.

    Points are parametrised by ``s`` in the open interval (0, 1) with
    horizontal position ``start + s (end - start)``. ``s = 1 - beta`` in the
    usual convex-combination notation.
    """

    kind = "arc"
    center: np.ndarray
    radius: float
    start: np.ndarray
    end: np.ndarray
    source: tuple = ()
    direction: np.ndarray = field(init=False)

    def __post_init__(self):
        c = np.array(self.center, dtype=float)
        a = np.array(self.start, dtype=float)[:2]
        b = np.array(self.end, dtype=float)[:2]
        if abs(c[2]) > 0 or not self.radius > 0:
            raise ValueError("arc centre must lie on the plane with positive radius")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "start", a)
        object.__setattr__(self, "end", b)
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "direction", (b - a) / np.linalg.norm(b - a))

    def point_at(self, s):
        s = np.asarray(s, dtype=float)
        xy = self.start + s[..., None] * (self.end - self.start)
        h2 = self.radius ** 2 - np.sum((xy - self.center[:2]) ** 2, axis=-1)
        z = np.sqrt(np.maximum(h2, 0.0))
        return np.concatenate([xy, z[..., None]], axis=-1)

    def sample(self, n=50):
        return self.point_at((np.arange(n) + 0.5) / n)

    def residual(self, q):
        return np.abs(np.linalg.norm(np.asarray(q, float) - self.center, axis=-1) - self.radius)

    def same_as(self, other, tol=1e-9):
        if not isinstance(other, ArcPiece):
            return False
        if not (_close(self.center, other.center, tol) and abs(self.radius - other.radius) <= tol):
            return False
        return ((_close(self.start, other.start, tol) and _close(self.end, other.end, tol))
                or (_close(self.start, other.end, tol) and _close(self.end, other.start, tol)))


@dataclass(frozen=True, eq=False)
class CapPiece:
    """Part of the sphere ``|q - center| = radius`` above the triangle ``S``."""

    kind = "cap"
    center: np.ndarray
    radius: float
    triangle: np.ndarray
    source: tuple = ()

    def __post_init__(self):
        c = np.array(self.center, dtype=float)
        tri = np.array(self.triangle, dtype=float)[:, :2]
        if tri.shape != (3, 2):
            raise ValueError("triangle must have three 2D vertices")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "triangle", tri)
        object.__setattr__(self, "radius", float(self.radius))

    def height(self, xy):
        xy = np.asarray(xy, dtype=float)
        h2 = self.radius ** 2 - np.sum((xy - self.center[:2]) ** 2, axis=-1)
        return np.sqrt(np.maximum(h2, 0.0))

    def lift(self, xy):
        xy = np.asarray(xy, dtype=float)
        return np.concatenate([xy, self.height(xy)[..., None]], axis=-1)

    def sample(self, n=50, seed=0):
        """``n`` deterministic points strictly inside the triangle, lifted."""
        rng = np.random.default_rng(seed)
        w = rng.dirichlet(np.ones(3), size=n)
        return self.lift(w @ self.triangle)

    def projection_distance(self, q):
        return dist_point_triangle_2d(q, *self.triangle)

    def residual(self, q):
        return np.abs(np.linalg.norm(np.asarray(q, float) - self.center, axis=-1) - self.radius)

    def same_as(self, other, tol=1e-9):
        if not isinstance(other, CapPiece):
            return False
        if not (_close(self.center, other.center, tol) and abs(self.radius - other.radius) <= tol):
            return False
        return (all(any(_close(v, w, tol) for w in other.triangle) for v in self.triangle)
                and all(any(_close(w, v, tol) for v in self.triangle) for w in other.triangle))


def dedupe(pieces, tol=1e-9):
    """Drop empties and geometric duplicates, preserving first-seen order."""
    out = []
    for piece in pieces:
        if isinstance(piece, EmptyPiece):
            continue
        if not any(piece.same_as(q, tol) for q in out):
            out.append(piece)
    return out


def same_piece_set(a, b, tol=1e-9):
    a, b = dedupe(a, tol), dedupe(b, tol)
    return (len(a) == len(b)
            and all(any(p.same_as(q, tol) for q in b) for p in a)
            and all(any(q.same_as(p, tol) for p in a) for q in b))
