import json

import numpy as np
import pytest

from reachavoid.coalition import build_model
from reachavoid.exceptions import ResolutionTooLow
from reachavoid.geometry import TargetPlaneSpec, canonical_frame, to_canonical
from reachavoid.mesh import export_mesh
from reachavoid.pieces import PointPiece
from reachavoid.triple import triple_barrier_noncollinear


def test_cap_vertices_lie_on_sphere_over_triangle():
    cap = triple_barrier_noncollinear([1, 0, 1], [-1, 0, 1], [0, 2, 1])
    mesh = export_mesh([cap], 32)
    assert len(mesh.faces) == 31 ** 2
    np.testing.assert_allclose(np.linalg.norm(mesh.vertices - cap.center, axis=1), cap.radius,
                               atol=1e-6)
    assert max(cap.projection_distance(v) for v in mesh.vertices) <= 1e-9
    assert mesh.face_areas().min() > 1e-12
    assert mesh.faces.max() < len(mesh.vertices)


def test_point_piece_and_empty_mesh():
    mesh = export_mesh([PointPiece([0, 0, 2])], 8)
    np.testing.assert_array_equal(mesh.vertices, [[0, 0, 2]])
    assert mesh.points.tolist() == [0]
    empty = export_mesh([], 8)
    assert json.loads(empty.to_json())["vertices"] == []
    assert empty.n_components() == 0


def test_resolution_floor():
    with pytest.raises(ResolutionTooLow):
        export_mesh([], 7)


def test_arc_polyline_and_obj_records():
    pieces = build_model([[0, 0, -1], [2, 0, 1]]).pieces
    mesh = export_mesh(pieces, 16)
    arc = [p for p in pieces if p.kind == "arc"][0]
    assert len(mesh.segments) == 15
    np.testing.assert_allclose(arc.residual(mesh.vertices[mesh.segments.ravel()]), 0, atol=1e-9)
    # point piece is the arc's endpoint, so the two merge into one component
    assert mesh.n_components() == 1
    obj = mesh.to_obj()
    assert obj.count("\nl ") == 15 and "\nv " in obj


def test_raw_frame_round_trip():
    frame = canonical_frame(TargetPlaneSpec((1, 2, 2), 3))
    pieces = build_model([[1, 0, 1], [-1, 0, 1], [0, 2, 1], [0, 0, -2]]).pieces
    canon = export_mesh(pieces, 12)
    raw = export_mesh(pieces, 12, frame="raw", canonical=frame)
    assert raw.frame == "raw"
    np.testing.assert_allclose(to_canonical(frame, raw.vertices), canon.vertices, atol=1e-9)


def test_adjacent_caps_form_one_component():
    mesh = export_mesh(build_model([[0, 0, 1], [4, 0, 1], [0, 4, 1], [5, 5, 1]]).pieces, 16)
    assert set(mesh.piece_tags.tolist()) == {0, 1}
    assert mesh.n_components() == 1
