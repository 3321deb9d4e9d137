"""Triangulated export of barrier pieces for plotting (JSON and OBJ)."""
import json
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .exceptions import ResolutionTooLow
from .geometry import CanonicalFrame, from_canonical
from .pieces import ArcPiece, CapPiece, EmptyPiece, PointPiece

MIN_RESOLUTION = 8


@dataclass
class BarrierMesh:
    vertices: np.ndarray
    faces: np.ndarray
    piece_tags: np.ndarray
    frame: str = "canonical"
    segments: np.ndarray = field(default_factory=lambda: np.zeros((0, 2), int))
    segment_tags: np.ndarray = field(default_factory=lambda: np.zeros(0, int))
    points: np.ndarray = field(default_factory=lambda: np.zeros(0, int))
    point_tags: np.ndarray = field(default_factory=lambda: np.zeros(0, int))
    pieces: list = field(default_factory=list)

    def to_dict(self):
        return {
            "frame": self.frame,
            "vertices": self.vertices.tolist(),
            "faces": self.faces.tolist(),
            "piece_tags": self.piece_tags.tolist(),
            "segments": self.segments.tolist(),
            "segment_tags": self.segment_tags.tolist(),
            "points": self.points.tolist(),
            "point_tags": self.point_tags.tolist(),
            "pieces": self.pieces,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=1)

    def to_obj(self):
        lines = [f"# barrier mesh, {self.frame} frame"]
        lines += ["v " + " ".join(repr(float(c)) for c in v) for v in self.vertices]
        lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in self.faces]
        lines += [f"l {a + 1} {b + 1}" for a, b in self.segments]
        lines += [f"p {k + 1}" for k in self.points]
        return "\n".join(lines) + "\n"

    def face_areas(self):
        if len(self.faces) == 0:
            return np.zeros(0)
        a, b, c = (self.vertices[self.faces[:, k]] for k in range(3))
        return 0.5 * np.linalg.norm(np.cross(b - a, c - a), axis=1)

    def n_components(self):
        """Connected components over faces, segments and isolated points."""
        used = np.unique(np.concatenate([self.faces.ravel(), self.segments.ravel(),
                                         self.points.ravel()]).astype(int))
        if len(used) == 0:
            return 0
        edges = [self.segments]
        if len(self.faces):
            edges += [self.faces[:, [0, 1]], self.faces[:, [1, 2]]]
        e = np.concatenate(edges).astype(int)
        n = len(self.vertices)
        graph = coo_matrix((np.ones(len(e)), (e[:, 0], e[:, 1])), shape=(n, n))
        _, labels = connected_components(graph, directed=False)
        return len(np.unique(labels[used]))


def _cap_patch(piece, res):
    """Barycentric lattice of the triangle lifted onto the sphere."""
    A, B, C = piece.triangle
    N = res - 1
    index = {}
    xy = []
    for i in range(N + 1):
        for j in range(N + 1 - i):
            index[i, j] = len(xy)
            xy.append(A + (i / N) * (B - A) + (j / N) * (C - A))
    faces = []
    for i in range(N):
        for j in range(N - i):
            faces.append((index[i, j], index[i + 1, j], index[i, j + 1]))
            if i + j + 1 < N:
                faces.append((index[i + 1, j], index[i + 1, j + 1], index[i, j + 1]))
    return piece.lift(np.array(xy)), np.array(faces)


def _merge(vertices, tol):
    """Map each vertex to the first vertex within ``tol`` of it."""
    if len(vertices) == 0:
        return vertices, np.zeros(0, int)
    tree = cKDTree(vertices)
    remap = np.arange(len(vertices))
    for a, b in sorted(tree.query_pairs(tol)):
        root = remap[a]
        if remap[b] == b and root < b:
            remap[b] = root
    keep = np.unique(remap)
    new_index = np.full(len(vertices), -1)
    new_index[keep] = np.arange(len(keep))
    return vertices[keep], new_index[remap]


def _describe(piece):
    d = {"kind": piece.kind, "source": [int(k) for k in piece.source]}
    if isinstance(piece, (ArcPiece, CapPiece)):
        d["center"] = piece.center.tolist()
        d["radius"] = piece.radius
    if isinstance(piece, PointPiece):
        d["location"] = piece.location.tolist()
    return d


def export_mesh(pieces, resolution=32, frame="canonical", canonical=None, merge_tol=1e-9):
    """Sample barrier pieces into a mesh.

    Caps become triangulated patches over their triangles. Arcs become
    polylines of ``resolution`` points and points become lone vertices.
    Coincident vertices of adjacent pieces are merged, so a connected
    barrier yields a connected mesh. ``frame="raw"`` maps the vertices back
    through ``canonical`` (a :class:`CanonicalFrame`).
    """
    if resolution < MIN_RESOLUTION:
        raise ResolutionTooLow(f"resolution must be >= {MIN_RESOLUTION}, got {resolution}")
    if frame not in ("raw", "canonical"):
        raise ValueError(f"frame must be 'raw' or 'canonical', got {frame!r}")
    verts, faces, ftags, segs, stags, pts, ptags, info = [], [], [], [], [], [], [], []
    offset = 0
    kept = [p for p in pieces if not isinstance(p, EmptyPiece)]
    for tag, piece in enumerate(kept):
        info.append(_describe(piece))
        if isinstance(piece, CapPiece):
            v, f = _cap_patch(piece, resolution)
            faces.append(f + offset)
            ftags += [tag] * len(f)
        elif isinstance(piece, ArcPiece):
            v = piece.point_at(np.linspace(0.0, 1.0, resolution))
            k = np.arange(resolution - 1) + offset
            segs.append(np.stack([k, k + 1], axis=1))
            stags += [tag] * (resolution - 1)
        elif isinstance(piece, PointPiece):
            v = piece.location[None, :]
            pts.append(offset)
            ptags.append(tag)
        else:
            raise TypeError(f"cannot export {type(piece).__name__}")
        verts.append(v)
        offset += len(v)

    V = np.concatenate(verts) if verts else np.zeros((0, 3))
    V, remap = _merge(V, merge_tol)
    F = remap[np.concatenate(faces)] if faces else np.zeros((0, 3), int)
    S = remap[np.concatenate(segs)] if segs else np.zeros((0, 2), int)
    Pt = remap[np.array(pts, int)] if pts else np.zeros(0, int)
    if frame == "raw":
        canonical = canonical if canonical is not None else CanonicalFrame.identity()
        V = from_canonical(canonical, V)
    return BarrierMesh(V, F.astype(int), np.array(ftags, int), frame, S.astype(int),
                       np.array(stags, int), Pt.astype(int), np.array(ptags, int), info)
