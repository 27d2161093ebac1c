"""Shell documents and result files: round trips, diagnostics, determinism."""

import json

import numpy as np
import pytest

from netfold.catalog import builtin
from netfold.errors import MissingGeometryError, ValidationError
from netfold.geometry import rank_nets
from netfold.io import (
    dedup_doc,
    enumeration_doc,
    load_polyhedron,
    polyhedron_from_doc,
    polyhedron_to_doc,
    save_polyhedron,
    write_dedup,
    write_enumeration,
    write_estimates,
    write_plot_data,
    write_ranking,
    write_statistics,
)
from netfold.analysis import build_statistics_table, estimate_comparison
from netfold.mlst import enumerate_mlsts
from netfold.shellgraph import build_shell_graph
from netfold.symmetry import dedupe_cuts, find_automorphisms


def test_polyhedron_round_trip(tmp_path):
    spec = builtin("cube")
    path = tmp_path / "cube.json"
    save_polyhedron(spec, path)
    loaded = load_polyhedron(path)
    assert loaded.name == spec.name
    assert loaded.faces == spec.faces
    assert np.allclose(loaded.vertices, spec.vertices)


def test_faces_only_round_trip(tmp_path):
    doc = {"name": "square-tube", "vertices": None,
           "faces": [[0, 1, 5, 4], [1, 2, 6, 5], [2, 3, 7, 6], [3, 0, 4, 7]]}
    path = tmp_path / "tube.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    spec = load_polyhedron(path)
    assert spec.vertices is None
    assert len(spec.faces) == 4
    with pytest.raises(MissingGeometryError, match="square-tube"):
        spec.require_geometry()
    # Re-saving reproduces the same document content.
    out = tmp_path / "tube-out.json"
    save_polyhedron(spec, out)
    assert json.loads(out.read_text())["vertices"] is None


@pytest.mark.parametrize(
    "doc, fragment",
    [
        ([1, 2], "must be an object"),
        ({"name": "x", "faces": [[0, 1, 2]], "extra": 1}, "unknown shell document fields"),
        ({"name": "", "faces": [[0, 1, 2]]}, "'name'"),
        ({"name": "x", "faces": []}, "'faces'"),
        ({"name": "x", "faces": [[0, 1]]}, "face 0 must list at least 3"),
        ({"name": "x", "faces": [[0, 1, 2], [0, 1, "2"]]}, "face 1 entry 2 is '2'"),
        ({"name": "x", "faces": [[0, 1, -2]]}, "face 0 entry 2 is -2"),
        ({"name": "x", "faces": [[0, 1, 2]], "vertices": 5}, "'vertices'"),
        ({"name": "x", "faces": [[0, 1, 2]], "vertices": [[0.0, 1.0]]}, "vertex 0"),
    ],
)
def test_malformed_documents_name_the_fault(doc, fragment):
    with pytest.raises(ValidationError, match=fragment):
        polyhedron_from_doc(doc)


def test_load_reports_path_and_json_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"name": "x",\n  faces: []}', encoding="utf-8")
    with pytest.raises(ValidationError) as exc:
        load_polyhedron(path)
    assert "broken.json" in str(exc.value)
    assert "line 2" in str(exc.value)


def test_enumeration_doc_and_file(tmp_path):
    graph = build_shell_graph(builtin("tetrahedron"))
    result = enumerate_mlsts(graph)
    doc = enumeration_doc(
        graph=graph,
        leaf_count=result.leaf_count,
        cuts=result.cut_tuples(),
        nodes_visited=result.nodes_visited,
        shell_name="tetrahedron",
    )
    assert doc["leaf_count"] == 3
    assert doc["n_labeled_cuts"] == 4
    assert doc["cuts"] == sorted(doc["cuts"])
    path = tmp_path / "enum.json"
    write_enumeration(
        path,
        graph=graph,
        leaf_count=result.leaf_count,
        cuts=result.cut_tuples(),
        nodes_visited=result.nodes_visited,
        shell_name="tetrahedron",
    )
    on_disk = json.loads(path.read_text())
    assert on_disk == json.loads(json.dumps(doc))


def test_counting_only_enumeration_doc():
    graph = build_shell_graph(builtin("tetrahedron"))
    doc = enumeration_doc(
        graph=graph, leaf_count=3, cuts=None, nodes_visited=17,
        shell_name="tetrahedron", labeled_count=4,
    )
    assert doc["n_labeled_cuts"] == 4
    assert "cuts" not in doc


def test_dedup_doc_totals(tmp_path):
    graph = build_shell_graph(builtin("cube"))
    result = enumerate_mlsts(graph)
    classes = dedupe_cuts(graph, result.cuts, find_automorphisms(graph))
    doc = dedup_doc(graph, classes, "cube")
    assert doc["n_classes"] == 4
    assert doc["n_labeled_cuts"] == 120
    assert doc["classes"] == sorted(doc["classes"], key=lambda c: c["cut"])
    write_dedup(tmp_path / "classes.json", graph, classes, "cube")
    assert json.loads((tmp_path / "classes.json").read_text()) == json.loads(json.dumps(doc))


def test_ranking_csv_shape(tmp_path):
    spec = builtin("cube")
    graph = build_shell_graph(spec)
    result = enumerate_mlsts(graph)
    classes = dedupe_cuts(graph, result.cuts, find_automorphisms(graph))
    ranked = rank_nets(spec, [(c.edges, c.orbit_size) for c in classes], graph=graph)
    path = tmp_path / "ranking.csv"
    write_ranking(path, ranked)
    lines = path.read_text().splitlines()
    assert lines[0] == "rank,radius_of_gyration,overlapping,overlap_witness,orbit_size,cut_edges"
    assert len(lines) == 1 + 4
    first = lines[1].split(",")
    assert first[0] == "1"
    assert float(first[1]) == pytest.approx(2.357023, abs=1e-6)
    assert first[2] == "0"


def test_statistics_and_estimates_files(tmp_path):
    rows = build_statistics_table(names=["tetrahedron", "cube"])
    stats_path = tmp_path / "statistics.tsv"
    write_statistics(stats_path, rows)
    lines = stats_path.read_text().splitlines()
    assert lines[0].split("\t")[:4] == ["name", "V", "E", "F"]
    cube_line = next(l for l in lines if l.startswith("cube\t"))
    fields = cube_line.split("\t")
    assert fields[1:4] == ["8", "12", "6"]
    assert fields[5] == "384"      # spanning trees
    assert fields[10] == "5/16"    # optimal ratio 120/384

    est_path = tmp_path / "estimates.tsv"
    write_estimates(est_path, estimate_comparison(rows))
    est_lines = est_path.read_text().splitlines()
    assert est_lines[0].startswith("name\tV\tE\tL_exact")
    assert len(est_lines) == 3


def test_plot_data_files(tmp_path):
    series = {"b_series": [(1.0, 2.0)], "a_series": [(3.0, 4.5), (5.0, 6.0)]}
    written = write_plot_data(tmp_path / "plots", series)
    assert [p.name for p in written] == ["a_series.tsv", "b_series.tsv"]
    assert (tmp_path / "plots" / "a_series.tsv").read_text() == "3.0\t4.5\n5.0\t6.0\n"


def test_rewrites_are_byte_identical(tmp_path):
    spec = builtin("octahedron")
    graph = build_shell_graph(spec)
    result = enumerate_mlsts(graph)
    classes = dedupe_cuts(graph, result.cuts, find_automorphisms(graph))
    ranked = rank_nets(spec, [(c.edges, c.orbit_size) for c in classes], graph=graph)

    blobs = []
    for round_no in (1, 2):
        d = tmp_path / f"run{round_no}"
        d.mkdir()
        save_polyhedron(spec, d / "shell.json")
        write_enumeration(
            d / "enum.json", graph=graph, leaf_count=result.leaf_count,
            cuts=result.cut_tuples(), nodes_visited=result.nodes_visited,
            shell_name=spec.name,
        )
        write_dedup(d / "classes.json", graph, classes, spec.name)
        write_ranking(d / "ranking.csv", ranked)
        blobs.append(tuple(
            (p.name, p.read_bytes()) for p in sorted(d.iterdir())
        ))
    assert blobs[0] == blobs[1]
