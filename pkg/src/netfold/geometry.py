"""Unfold cuts into planar nets, rank them, and screen for self-overlap.

Hinges are the shell edges not in the cut; they always form a spanning tree
of the face graph, so a breadth-first walk from the root face places every
face exactly once.  Faces keep their outward orientation, which makes every
placed polygon counter-clockwise and puts each child on the far side of its
hinge line without any reflection case analysis.

A leaf of the cut has exactly one cut edge, so the faces around it fold into
a single fan and all place the leaf at one coincident point -- the vertex
connection.  The cut edge's far endpoint is placed twice, once by each face
bordering that edge, equidistant from the connection point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import FallbackExhaustedError, ValidationError
from .polyhedra import Edge, PolyhedronSpec, canon_edge, edge_face_table
from .shellgraph import build_shell_graph, cut_leaves

RELATIVE_TOL = 1e-9


@dataclass(frozen=True)
class Marker:
    """A vertex connection: one leaf of the cut, placed in the net.

    `point` is the coincident placement of the leaf shared by every face
    around it; `far_points` are the two placements of the cut edge's other
    endpoint, one per bordering face (ascending face index).
    """

    vertex: int
    far_vertex: int
    point: tuple[float, float]
    far_points: tuple[tuple[float, float], tuple[float, float]]


@dataclass(frozen=True, eq=False)
class NetLayout:
    """A cut unfolded into the plane."""

    spec: PolyhedronSpec
    cut: tuple[Edge, ...]
    root_face: int
    polygons: tuple[np.ndarray, ...]
    hinges: tuple[tuple[int, int, Edge], ...]
    markers: tuple[Marker, ...]

    @property
    def n_faces(self) -> int:
        return len(self.polygons)

    def mean_edge_length(self) -> float:
        total = 0.0
        count = 0
        for poly in self.polygons:
            shifted = np.roll(poly, -1, axis=0)
            total += float(np.linalg.norm(shifted - poly, axis=1).sum())
            count += poly.shape[0]
        return total / count


@dataclass(frozen=True, eq=False)
class RankedNet:
    """One deduplicated cut with its net, radius of gyration, and rank."""

    cut: tuple[int, ...]
    orbit_size: int
    layout: NetLayout
    centroid: tuple[float, float]
    radius_of_gyration: float
    overlapping: bool
    overlap_witness: Optional[tuple[int, int]]
    rank: int


def _face_basis(points: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Origin and in-plane orthonormal axes for one face, outward-oriented."""
    origin = points[0]
    # Newell normal: proportional to the outward normal for an outward cycle
    shifted = np.roll(points, -1, axis=0)
    normal = np.sum(np.cross(points, shifted), axis=0)
    norm = np.linalg.norm(normal)
    if norm == 0.0:
        raise ValidationError("degenerate face: zero normal")
    normal = normal / norm
    x_axis = points[1] - origin
    x_axis = x_axis - normal * (x_axis @ normal)
    x_len = np.linalg.norm(x_axis)
    if x_len == 0.0:
        raise ValidationError("degenerate face: zero-length first edge")
    x_axis = x_axis / x_len
    y_axis = np.cross(normal, x_axis)
    return origin, x_axis, y_axis


def _local_coords(spec: PolyhedronSpec, face: int) -> np.ndarray:
    """Isometric 2D coordinates of one face, counter-clockwise."""
    points = spec.vertices[list(spec.faces[face])]
    origin, x_axis, y_axis = _face_basis(points)
    rel = points - origin
    return np.column_stack((rel @ x_axis, rel @ y_axis))


def unfold(spec: PolyhedronSpec, cut: Sequence[Edge], root_face: Optional[int] = None) -> NetLayout:
    """Unfold a shell along a cut into a planar net.

    The hinge set is the complement of the cut; it must form a spanning tree
    of the face graph.  Faces are placed breadth-first from the root face
    (lowest index unless given), each child by the orientation-preserving
    rigid motion matching the shared edge.
    """
    spec.require_geometry()
    cut_edges = {canon_edge(u, v) for u, v in cut}
    table = edge_face_table(spec)
    unknown = cut_edges - set(table)
    if unknown:
        raise ValidationError(f"cut edges not on the shell: {sorted(unknown)}")

    n_faces = spec.n_faces
    hinge_links: dict[int, list[tuple[int, Edge]]] = {f: [] for f in range(n_faces)}
    n_hinges = 0
    for edge, faces in table.items():
        if edge in cut_edges or len(faces) != 2:
            continue
        a, b = faces
        hinge_links[a].append((b, edge))
        hinge_links[b].append((a, edge))
        n_hinges += 1
    if n_hinges != n_faces - 1:
        raise ValidationError(
            f"cut complement has {n_hinges} hinges for {n_faces} faces; "
            "it must be a face-graph spanning tree"
        )

    root = min(range(n_faces)) if root_face is None else int(root_face)
    if not 0 <= root < n_faces:
        raise ValidationError(f"root face {root} out of range")

    placed: list[Optional[np.ndarray]] = [None] * n_faces
    placed[root] = _local_coords(spec, root)
    hinges: list[tuple[int, int, Edge]] = []
    queue = [root]
    scale = float(np.mean([
        np.linalg.norm(spec.vertices[u] - spec.vertices[v]) for u, v in table
    ]))
    tol = RELATIVE_TOL * scale
    while queue:
        parent = queue.pop(0)
        parent_face = spec.faces[parent]
        parent_poly = placed[parent]
        for child, edge in sorted(hinge_links[parent], key=lambda it: it[0]):
            if placed[child] is not None:
                continue
            child_face = spec.faces[child]
            local = _local_coords(spec, child)
            u, v = edge
            pu = parent_poly[parent_face.index(u)]
            pv = parent_poly[parent_face.index(v)]
            lu = local[child_face.index(u)]
            lv = local[child_face.index(v)]
            d = lv - lu
            target = pv - pu
            length = float(np.linalg.norm(d))
            if not math.isclose(length, float(np.linalg.norm(target)), rel_tol=1e-9, abs_tol=tol):
                raise ValidationError(f"hinge edge {edge} changes length between faces")
            cos_t = float(d @ target) / (length * length)
            sin_t = float(d[0] * target[1] - d[1] * target[0]) / (length * length)
            rot = np.array([[cos_t, -sin_t], [sin_t, cos_t]])
            placed[child] = (local - lu) @ rot.T + pu
            hinges.append((parent, child, edge))
            queue.append(child)
    missing = [f for f in range(n_faces) if placed[f] is None]
    if missing:
        raise ValidationError(f"hinge tree does not reach faces {missing}")

    polygons = tuple(placed)  # type: ignore[arg-type]
    _assert_isometric(spec, polygons, tol)
    markers = _markers(spec, cut_edges, table, polygons, tol)
    return NetLayout(
        spec=spec,
        cut=tuple(sorted(cut_edges)),
        root_face=root,
        polygons=polygons,
        hinges=tuple(hinges),
        markers=markers,
    )


def _assert_isometric(spec: PolyhedronSpec, polygons: Sequence[np.ndarray], tol: float) -> None:
    for f, poly in enumerate(polygons):
        face = spec.faces[f]
        pts3 = spec.vertices[list(face)]
        for k in range(len(face)):
            l3 = float(np.linalg.norm(pts3[(k + 1) % len(face)] - pts3[k]))
            l2 = float(np.linalg.norm(poly[(k + 1) % len(face)] - poly[k]))
            assert abs(l3 - l2) <= tol + RELATIVE_TOL * l3, (
                f"face {f} edge {k} length {l2} differs from shell length {l3}"
            )


def _markers(
    spec: PolyhedronSpec,
    cut_edges: set[Edge],
    table: dict[Edge, tuple[int, ...]],
    polygons: Sequence[np.ndarray],
    tol: float,
) -> tuple[Marker, ...]:
    degree: dict[int, int] = {}
    for u, v in cut_edges:
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
    markers = []
    for edge in sorted(cut_edges):
        for leaf, far in (edge, edge[::-1]):
            if degree[leaf] != 1:
                continue
            faces = table[edge]
            assert len(faces) == 2, "a leaf's cut edge always borders two faces"
            a, b = sorted(faces)
            pa = polygons[a][spec.faces[a].index(leaf)]
            pb = polygons[b][spec.faces[b].index(leaf)]
            assert float(np.linalg.norm(pa - pb)) <= tol, (
                f"leaf {leaf} does not place coincidently: {pa} vs {pb}"
            )
            qa = polygons[a][spec.faces[a].index(far)]
            qb = polygons[b][spec.faces[b].index(far)]
            markers.append(Marker(
                vertex=leaf,
                far_vertex=far,
                point=(float(pa[0]), float(pa[1])),
                far_points=(
                    (float(qa[0]), float(qa[1])),
                    (float(qb[0]), float(qb[1])),
                ),
            ))
    return tuple(markers)


def vertex_connections(spec: PolyhedronSpec, cut: Sequence[Edge]) -> tuple[int, ...]:
    """The vertices that stay connections in the net: degree-1 cut vertices."""
    graph = build_shell_graph(spec, require_closed=False)
    ids = []
    for u, v in cut:
        e = graph.edge_index.get(canon_edge(u, v))
        if e is None:
            raise ValidationError(f"cut edge {(u, v)} is not a shell edge")
        ids.append(e)
    return cut_leaves(graph, ids)


def _polygon_integrals(poly: np.ndarray) -> tuple[float, float, float, float]:
    """Signed area, first moments, and second polar moment about the origin."""
    x = poly[:, 0]
    y = poly[:, 1]
    x1 = np.roll(x, -1)
    y1 = np.roll(y, -1)
    cross = x * y1 - x1 * y
    area = float(cross.sum()) / 2.0
    sx = float(((x + x1) * cross).sum()) / 6.0
    sy = float(((y + y1) * cross).sum()) / 6.0
    ixx = float(((y * y + y * y1 + y1 * y1) * cross).sum()) / 12.0
    iyy = float(((x * x + x * x1 + x1 * x1) * cross).sum()) / 12.0
    return area, sx, sy, ixx + iyy


def centroid_and_rg(layout: NetLayout) -> tuple[tuple[float, float], float]:
    """Centroid and radius of gyration of the net region.

    Integrals are evaluated polygon by polygon from vertex coordinates
    (shoelace area, first and second moments) and summed; for an overlapping
    layout the overlap is counted with multiplicity, which is irrelevant
    because overlapping nets are discarded by selection.
    """
    area = 0.0
    sx = 0.0
    sy = 0.0
    polar = 0.0
    for poly in layout.polygons:
        a, mx, my, ip = _polygon_integrals(poly)
        assert a > 0.0, "outward-oriented faces must stay counter-clockwise"
        area += a
        sx += mx
        sy += my
        polar += ip
    if area <= 0.0:
        raise ValidationError("net has zero area")
    cx = sx / area
    cy = sy / area
    rg_sq = polar / area - (cx * cx + cy * cy)
    return (cx, cy), math.sqrt(max(rg_sq, 0.0))


def _proper_crossing(p1, p2, q1, q2, tol: float) -> bool:
    """Do open segments (p1,p2) and (q1,q2) cross transversally?"""
    d1 = p2 - p1
    d2 = q2 - q1
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    if abs(denom) <= tol * tol:
        return False
    r = q1 - p1
    t = (r[0] * d2[1] - r[1] * d2[0]) / denom
    s = (r[0] * d1[1] - r[1] * d1[0]) / denom
    eps = tol / max(float(np.linalg.norm(d1)), float(np.linalg.norm(d2)))
    return eps < t < 1.0 - eps and eps < s < 1.0 - eps


def _strictly_inside(point: np.ndarray, poly: np.ndarray, tol: float) -> bool:
    """Is the point inside the polygon and farther than tol from its boundary?"""
    x, y = float(point[0]), float(point[1])
    n = poly.shape[0]
    inside = False
    for k in range(n):
        ax, ay = poly[k]
        bx, by = poly[(k + 1) % n]
        # distance to the segment first: boundary contact is not "inside"
        dx, dy = bx - ax, by - ay
        ll = dx * dx + dy * dy
        t = 0.0 if ll == 0.0 else max(0.0, min(1.0, ((x - ax) * dx + (y - ay) * dy) / ll))
        px, py = ax + t * dx, ay + t * dy
        if (x - px) ** 2 + (y - py) ** 2 <= tol * tol:
            return False
        if (ay > y) != (by > y):
            xs = ax + (y - ay) * dx / dy
            if x < xs:
                inside = not inside
    return inside


def check_overlap(layout: NetLayout) -> tuple[bool, Optional[tuple[int, int]]]:
    """Does any face pair intersect with positive area?

    Touching along a shared hinge segment or at a shared vertex is not
    overlap.  A positive-area intersection of simple polygons shows up as a
    proper edge crossing or as one polygon's probe point (vertex, centroid,
    or edge midpoint) strictly inside the other; both are tested with a
    tolerance of 1e-9 times the mean edge length.
    """
    tol = RELATIVE_TOL * layout.mean_edge_length()
    polys = layout.polygons
    boxes = [(p.min(axis=0), p.max(axis=0)) for p in polys]
    probes = []
    for p in polys:
        mids = (p + np.roll(p, -1, axis=0)) / 2.0
        centroid = p.mean(axis=0)
        probes.append(np.vstack((p, mids, centroid[None, :])))
    n = len(polys)
    for i in range(n):
        (ilo, ihi) = boxes[i]
        for j in range(i + 1, n):
            (jlo, jhi) = boxes[j]
            if (ilo > jhi + tol).any() or (jlo > ihi + tol).any():
                continue
            pi, pj = polys[i], polys[j]
            crossed = False
            for a in range(pi.shape[0]):
                a2 = (a + 1) % pi.shape[0]
                for b in range(pj.shape[0]):
                    b2 = (b + 1) % pj.shape[0]
                    if _proper_crossing(pi[a], pi[a2], pj[b], pj[b2], tol):
                        crossed = True
                        break
                if crossed:
                    break
            if crossed:
                return True, (i, j)
            if any(_strictly_inside(pt, pj, tol) for pt in probes[i]):
                return True, (i, j)
            if any(_strictly_inside(pt, pi, tol) for pt in probes[j]):
                return True, (i, j)
    return False, None


def rank_nets(
    spec: PolyhedronSpec,
    cuts: Sequence[tuple[tuple[int, ...], int]],
    graph=None,
) -> list[RankedNet]:
    """Unfold deduplicated cuts and rank them by radius of gyration.

    `cuts` holds (edge-id tuple, orbit size) pairs; edge ids refer to the
    shell graph's canonical edge order.  Ranking is ascending in R_g with
    ties broken by the edge-id tuple, ranks 1-based.
    """
    if graph is None:
        graph = build_shell_graph(spec, require_closed=False)
    entries = []
    for edge_ids, orbit_size in cuts:
        pairs = [graph.edges[e] for e in edge_ids]
        layout = unfold(spec, pairs)
        centroid, rg = centroid_and_rg(layout)
        overlapping, witness = check_overlap(layout)
        entries.append((rg, tuple(int(e) for e in edge_ids), orbit_size, layout, centroid, overlapping, witness))
    entries.sort(key=lambda it: (it[0], it[1]))
    return [
        RankedNet(
            cut=cut, orbit_size=orbit, layout=layout, centroid=centroid,
            radius_of_gyration=rg, overlapping=overlapping,
            overlap_witness=witness, rank=k + 1,
        )
        for k, (rg, cut, orbit, layout, centroid, overlapping, witness) in enumerate(entries)
    ]


def select_optimal_net(ranked: Sequence[RankedNet]) -> RankedNet:
    """First net in rank order that does not self-overlap."""
    if not ranked:
        raise ValidationError("no nets to select from")
    for net in ranked:
        if not net.overlapping:
            return net
    raise FallbackExhaustedError(
        "every optimal net self-overlaps; a fewer-leaf fallback is out of scope",
        ranked=list(ranked),
    )
