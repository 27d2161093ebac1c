import numpy as np
import pytest

from netfold.catalog import builtin
from netfold.errors import MissingGeometryError, NonManifoldError, ValidationError
from netfold.polyhedra import (
    PolyhedronSpec,
    canon_edge,
    edge_face_table,
    validate_polyhedron,
)

TETRA_FACES = ((0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2))


def test_canon_edge_orders_endpoints():
    assert canon_edge(3, 1) == (1, 3)
    assert canon_edge(1, 3) == (1, 3)


def test_faces_only_spec_supports_combinatorics():
    spec = PolyhedronSpec(name="t", faces=TETRA_FACES)
    assert spec.n_vertices == 4
    assert spec.edge_list() == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    assert not spec.has_geometry
    with pytest.raises(MissingGeometryError):
        spec.require_geometry()


def test_closed_tetrahedron_report():
    report = validate_polyhedron(builtin("tetrahedron"))
    assert report.closed
    assert (report.n_vertices, report.n_edges, report.n_faces) == (4, 6, 4)
    assert report.euler_characteristic == 2
    assert report.n_holes == 0
    assert report.planarity_residual <= 1e-12


def test_edge_face_table_pairs_every_edge_twice_on_closed_shell():
    spec = builtin("cube")
    table = edge_face_table(spec)
    assert len(table) == 12
    assert all(len(faces) == 2 for faces in table.values())


def test_open_shell_reports_boundary():
    spec = PolyhedronSpec(name="t-open", faces=TETRA_FACES[:3])
    report = validate_polyhedron(spec)
    assert not report.closed
    assert report.euler_characteristic == 1
    assert report.n_holes == 1
    assert sorted(report.boundary_edges) == [(1, 2), (1, 3), (2, 3)]


def test_face_index_out_of_range_rejected():
    with pytest.raises(ValidationError, match="out of range"):
        PolyhedronSpec(name="bad", faces=((0, 1, 5),), vertex_count=4)


def test_empty_faces_rejected():
    with pytest.raises(ValidationError):
        PolyhedronSpec(name="bad", faces=())


def test_vertices_shape_enforced():
    with pytest.raises(ValidationError, match="shape"):
        PolyhedronSpec(name="bad", faces=TETRA_FACES, vertices=np.zeros((4, 2)))


def test_edge_in_three_faces_is_non_manifold():
    faces = ((0, 1, 2), (0, 1, 3), (0, 1, 4), (1, 2, 3), (2, 3, 4), (0, 2, 4), (1, 3, 4), (0, 3, 4))
    with pytest.raises(NonManifoldError):
        validate_polyhedron(PolyhedronSpec(name="book", faces=faces[:3]))


def test_repeated_vertex_in_face_rejected():
    with pytest.raises(ValidationError):
        validate_polyhedron(PolyhedronSpec(name="bad", faces=((0, 1, 1),)))


def test_nonplanar_face_rejected():
    vertices = np.array([
        [0.0, 0.0, 0.0],
        [1.0, 0.0, 0.0],
        [1.0, 1.0, 0.4],
        [0.0, 1.0, 0.0],
        [0.5, 0.5, -1.0],
    ])
    faces = ((0, 3, 2, 1), (0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4))
    with pytest.raises(ValidationError, match="planar"):
        validate_polyhedron(PolyhedronSpec(name="bent", faces=faces, vertices=vertices))
