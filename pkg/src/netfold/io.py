"""Reading shell documents and writing result files.

One native JSON schema describes a shell: `{"name": ..., "vertices": [[x,y,z],
...] or null, "faces": [[i,j,k,...], ...]}`.  A document without coordinates
still supports every combinatorial operation; geometry then raises cleanly.

All writers emit canonical bytes: keys sorted, rows canonically ordered, no
timestamps or wall-clock fields, floats via repr.  Re-running a pipeline with
any worker count reproduces the files byte for byte.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .analysis import EstimateRow, ShellStatistics
from .errors import ValidationError
from .geometry import RankedNet
from .polyhedra import PolyhedronSpec
from .shellgraph import ShellGraph
from .symmetry import CanonicalCut

PathLike = Union[str, Path]


def polyhedron_to_doc(spec: PolyhedronSpec) -> dict:
    return {
        "name": spec.name,
        "vertices": None if spec.vertices is None else [
            [float(c) for c in row] for row in spec.vertices
        ],
        "faces": [list(face) for face in spec.faces],
    }


def polyhedron_from_doc(doc: object) -> PolyhedronSpec:
    if not isinstance(doc, dict):
        raise ValidationError(f"shell document must be an object, got {type(doc).__name__}")
    unknown = set(doc) - {"name", "vertices", "faces"}
    if unknown:
        raise ValidationError(f"unknown shell document fields: {sorted(unknown)}")
    name = doc.get("name")
    if not isinstance(name, str) or not name:
        raise ValidationError("field 'name' must be a non-empty string")
    faces_raw = doc.get("faces")
    if not isinstance(faces_raw, list) or not faces_raw:
        raise ValidationError("field 'faces' must be a non-empty list of index lists")
    faces = []
    for fi, face in enumerate(faces_raw):
        if not isinstance(face, list) or len(face) < 3:
            raise ValidationError(f"face {fi} must list at least 3 vertex indices")
        for k, idx in enumerate(face):
            if not isinstance(idx, int) or isinstance(idx, bool) or idx < 0:
                raise ValidationError(
                    f"face {fi} entry {k} is {idx!r}; vertex indices are non-negative integers"
                )
        faces.append(tuple(face))
    vertices_raw = doc.get("vertices")
    vertices: Optional[np.ndarray]
    if vertices_raw is None:
        vertices = None
    else:
        if not isinstance(vertices_raw, list):
            raise ValidationError("field 'vertices' must be null or a list of [x, y, z] rows")
        for vi, row in enumerate(vertices_raw):
            if not isinstance(row, list) or len(row) != 3 or not all(
                isinstance(c, (int, float)) and not isinstance(c, bool) for c in row
            ):
                raise ValidationError(f"vertex {vi} must be a [x, y, z] number triple")
        vertices = np.asarray(vertices_raw, dtype=float)
    return PolyhedronSpec(name=name, vertices=vertices, faces=tuple(faces))


def _write_json(doc: object, path: PathLike) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False)
    Path(path).write_text(text + "\n", encoding="utf-8")


def load_polyhedron(path: PathLike) -> PolyhedronSpec:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON at line {exc.lineno}: {exc.msg}") from exc
    try:
        return polyhedron_from_doc(doc)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def save_polyhedron(spec: PolyhedronSpec, path: PathLike) -> None:
    _write_json(polyhedron_to_doc(spec), path)


def _fraction_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(value.numerator)


def enumeration_doc(
    graph: ShellGraph,
    leaf_count: int,
    cuts: Optional[Sequence[Sequence[int]]],
    nodes_visited: int,
    shell_name: str,
    labeled_count: Optional[int] = None,
) -> dict:
    """Document for an enumeration run; cuts may be omitted for counting-only
    runs, in which case labeled_count carries the total."""
    rows = None if cuts is None else sorted([int(e) for e in cut] for cut in cuts)
    doc = {
        "shell": shell_name,
        "n_vertices": graph.n,
        "n_edges": graph.m,
        "edges": [list(e) for e in graph.edges],
        "leaf_count": leaf_count,
        "n_labeled_cuts": len(rows) if rows is not None else labeled_count,
        "nodes_visited": nodes_visited,
    }
    if rows is not None:
        doc["cuts"] = rows
    return doc


def write_enumeration(path: PathLike, **kwargs) -> None:
    _write_json(enumeration_doc(**kwargs), path)


def dedup_doc(graph: ShellGraph, classes: Sequence[CanonicalCut], shell_name: str) -> dict:
    rows = sorted((list(c.edges), c.orbit_size) for c in classes)
    return {
        "shell": shell_name,
        "n_classes": len(classes),
        "n_labeled_cuts": sum(c.orbit_size for c in classes),
        "classes": [{"cut": cut, "orbit_size": orbit} for cut, orbit in rows],
    }


def write_dedup(path: PathLike, graph: ShellGraph, classes: Sequence[CanonicalCut], shell_name: str) -> None:
    _write_json(dedup_doc(graph, classes, shell_name), path)


def write_ranking(path: PathLike, ranked: Sequence[RankedNet]) -> None:
    """Ranking as CSV: rank, radius of gyration, overlap flag and witness,
    orbit size, and the cut's edge ids."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([
            "rank", "radius_of_gyration", "overlapping", "overlap_witness",
            "orbit_size", "cut_edges",
        ])
        for net in ranked:
            witness = "" if net.overlap_witness is None else f"{net.overlap_witness[0]}:{net.overlap_witness[1]}"
            writer.writerow([
                net.rank,
                repr(net.radius_of_gyration),
                int(net.overlapping),
                witness,
                net.orbit_size,
                " ".join(str(e) for e in net.cut),
            ])


STATISTICS_COLUMNS = (
    "name", "V", "E", "F", "closed", "N_ST", "N_aut", "L",
    "N_optimal_cuts", "N_optimal_nets", "optimal_ratio", "nodes_visited",
    "status", "note",
)


def write_statistics(path: PathLike, rows: Sequence[ShellStatistics]) -> None:
    """Catalog statistics as a tab-delimited table, one shell per row."""
    lines = ["\t".join(STATISTICS_COLUMNS)]
    for row in rows:
        ratio = row.optimal_ratio
        lines.append("\t".join([
            row.name,
            str(row.n_vertices), str(row.n_edges), str(row.n_faces),
            "yes" if row.closed else "no",
            str(row.n_spanning_trees), str(row.n_automorphisms),
            "" if row.leaf_count is None else str(row.leaf_count),
            "" if row.n_optimal_cuts is None else str(row.n_optimal_cuts),
            "" if row.n_optimal_nets is None else str(row.n_optimal_nets),
            "" if ratio is None else _fraction_str(ratio),
            str(row.nodes_visited),
            row.status,
            row.note,
        ]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_plot_data(out_dir: PathLike, series: dict[str, list[tuple[float, float]]]) -> list[Path]:
    """One two-column file per series, x then y, tab-delimited."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name in sorted(series):
        path = out / f"{name}.tsv"
        lines = [f"{repr(x)}\t{repr(y)}" for x, y in series[name]]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        written.append(path)
    return written


def write_estimates(path: PathLike, rows: Sequence[EstimateRow]) -> None:
    """Estimate-versus-exact residual table, tab-delimited."""
    header = (
        "name", "V", "E", "L_exact", "L_trend", "L_residual",
        "L_trend_from_V", "V_trend_from_E", "log2_ratio_exact",
        "log2_ratio_trend", "log2_ratio_residual",
    )
    lines = ["\t".join(header)]
    for row in rows:
        lines.append("\t".join([
            row.name, str(row.n_vertices), str(row.n_edges),
            "" if row.leaf_count is None else str(row.leaf_count),
            _fraction_str(row.leaf_trend),
            "" if row.leaf_residual is None else _fraction_str(row.leaf_residual),
            _fraction_str(row.leaf_trend_v),
            _fraction_str(row.vertex_trend),
            "" if row.ratio_log2 is None else repr(row.ratio_log2),
            _fraction_str(row.ratio_trend_log2),
            "" if row.ratio_log2_residual is None else repr(row.ratio_log2_residual),
        ]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
