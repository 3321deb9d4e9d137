"""Canonical-frame reduction and small vector helpers.

Every other module works in the canonical frame, where the target plane is
``z = 0`` and the play subspace is ``z > 0``. Raw coordinates are converted
once at ingestion with :func:`canonical_frame` / :func:`to_canonical`.
"""
from dataclasses import dataclass

import numpy as np

from ._validation import check_point
from .exceptions import ZeroNormal

#: Absolute tolerance for "equal coordinate" tests on unit-scale problems.
EPS_GEO = 1e-9


@dataclass(frozen=True)
class TargetPlaneSpec:
    """Plane ``K . z = b``; the play subspace is ``K . z > b``."""

    K: tuple
    b: float

    def __post_init__(self):
        K = check_point(self.K, "K")
        if not np.isfinite(self.b):
            raise ValueError("b must be finite")
        if np.linalg.norm(K) <= 1e-12:
            raise ZeroNormal(f"target plane normal K={K.tolist()} is zero")
        object.__setattr__(self, "K", tuple(float(k) for k in K))
        object.__setattr__(self, "b", float(self.b))


@dataclass(frozen=True)
class CanonicalFrame:
    """Isometry ``q = rotation @ p + translation`` onto the canonical frame."""

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        R = np.array(self.rotation, dtype=float)
        t = np.array(self.translation, dtype=float)
        R.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "rotation", R)
        object.__setattr__(self, "translation", t)

    @classmethod
    def identity(cls):
        return cls(np.eye(3), np.zeros(3))


def canonical_frame(spec):
    """Build the rigid motion taking ``K . z = b`` to ``z = 0``.

    The third row of the rotation is the unit normal, so the mapped
    z-coordinate of ``p`` equals ``(K . p - b) / |K|``. The first axis is
    built from the coordinate axis least aligned with ``K``.
    """
    if not isinstance(spec, TargetPlaneSpec):
        spec = TargetPlaneSpec(*spec)
    K = np.asarray(spec.K, dtype=float)
    n = K / np.linalg.norm(K)
    helper = np.zeros(3)
    helper[int(np.argmin(np.abs(n)))] = 1.0
    u = helper - (helper @ n) * n
    u /= np.linalg.norm(u)
    v = np.cross(n, u)
    R = np.vstack([u, v, n])
    # rows (u, v, n) form a right-handed basis, det = +1
    translation = np.array([0.0, 0.0, -spec.b / np.linalg.norm(K)])
    return CanonicalFrame(R, translation)


def to_canonical(frame, p):
    p = np.asarray(p, dtype=float)
    return p @ frame.rotation.T + frame.translation


def from_canonical(frame, p):
    p = np.asarray(p, dtype=float)
    return (p - frame.translation) @ frame.rotation


def project_to_target(p):
    q = np.array(p, dtype=float)
    q[..., 2] = 0.0
    return q


def reflect_across_target(p):
    q = np.array(p, dtype=float)
    q[..., 2] = -q[..., 2]
    return q


def mirror_height(p):
    """``(x, y, |z|)``: the pursuer or its reflection, whichever is in play."""
    q = np.array(p, dtype=float)
    q[..., 2] = np.abs(q[..., 2])
    return q


def dist_point_segment_2d(q, a, b):
    """Distance from 2D point ``q`` to segment ``[a, b]``."""
    q, a, b = (np.asarray(v, dtype=float)[:2] for v in (q, a, b))
    d = b - a
    L = d @ d
    if L == 0.0:
        return float(np.linalg.norm(q - a))
    s = np.clip((q - a) @ d / L, 0.0, 1.0)
    return float(np.linalg.norm(q - (a + s * d)))


def triangle_area_2d(a, b, c):
    a, b, c = (np.asarray(v, dtype=float)[:2] for v in (a, b, c))
    return 0.5 * abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def dist_point_triangle_2d(q, a, b, c):
    """Distance from ``q`` to the closed triangle ``abc`` (0 inside)."""
    q = np.asarray(q, dtype=float)[:2]
    verts = [np.asarray(v, dtype=float)[:2] for v in (a, b, c)]
    signs = []
    for k in range(3):
        u, w = verts[k], verts[(k + 1) % 3]
        signs.append((w[0] - u[0]) * (q[1] - u[1]) - (w[1] - u[1]) * (q[0] - u[0]))
    if all(s >= 0 for s in signs) or all(s <= 0 for s in signs):
        return 0.0
    return min(dist_point_segment_2d(q, verts[k], verts[(k + 1) % 3]) for k in range(3))


def union_margin(regions, eps=EPS_GEO):
    """Signed membership of a point in a union of vertical-prism regions.

    ``regions`` holds one ``(horizontal_distance, surface_gap)`` pair per
    region: the distance from the point's projection to the region's base,
    and the signed gap above the region's barrier surface. Regions whose
    base holds the projection (within ``eps``) decide by their largest gap;
    otherwise the result is minus the distance to the nearest base.
    """
    regions = list(regions)
    held = [gap for dist, gap in regions if dist <= eps]
    if held:
        return float(max(held))
    return -float(min(dist for dist, _ in regions))
