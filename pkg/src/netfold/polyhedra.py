"""Polyhedral shell descriptions: faces as vertex cycles plus optional coordinates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import MissingGeometryError, NonManifoldError, ValidationError

Edge = tuple[int, int]

# relative to mean edge length
PLANARITY_RTOL = 1e-9


def canon_edge(u: int, v: int) -> Edge:
    """Canonical undirected edge key (min, max)."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class PolyhedronSpec:
    """A polyhedral shell.

    Faces are cycles of vertex indices, counterclockwise as seen from outside
    the shell.  Coordinates are optional: a faces-only spec supports all
    combinatorial operations but rejects geometric ones.
    """

    name: str
    faces: tuple[tuple[int, ...], ...]
    vertices: Optional[np.ndarray] = None
    vertex_count: Optional[int] = None

    def __post_init__(self):
        faces = tuple(tuple(int(i) for i in f) for f in self.faces)
        if not faces:
            raise ValidationError(f"{self.name}: no faces")
        object.__setattr__(self, "faces", faces)
        top = 1 + max(max(f) for f in faces if f)
        if self.vertices is not None:
            arr = np.asarray(self.vertices, dtype=float)
            if arr.ndim != 2 or arr.shape[1] != 3:
                raise ValidationError(
                    f"{self.name}: vertices must have shape (V, 3), got {arr.shape}"
                )
            if self.vertex_count is not None and self.vertex_count != arr.shape[0]:
                raise ValidationError(
                    f"{self.name}: vertex_count {self.vertex_count} != {arr.shape[0]} coordinates"
                )
            object.__setattr__(self, "vertices", arr)
            object.__setattr__(self, "vertex_count", int(arr.shape[0]))
        elif self.vertex_count is None:
            object.__setattr__(self, "vertex_count", top)
        if top > self.vertex_count:
            raise ValidationError(
                f"{self.name}: face index {top - 1} out of range for {self.vertex_count} vertices"
            )

    @property
    def n_vertices(self) -> int:
        return self.vertex_count

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def has_geometry(self) -> bool:
        return self.vertices is not None

    def require_geometry(self) -> np.ndarray:
        if self.vertices is None:
            raise MissingGeometryError(f"{self.name}: shell has no vertex coordinates")
        return self.vertices

    def edge_list(self) -> tuple[Edge, ...]:
        """Undirected edges in canonical lexicographic order."""
        seen = set()
        for f in self.faces:
            for a, b in zip(f, f[1:] + f[:1]):
                seen.add(canon_edge(a, b))
        return tuple(sorted(seen))


@dataclass(frozen=True)
class ShellReport:
    """Validation outcome for a shell."""

    closed: bool
    n_vertices: int
    n_edges: int
    n_faces: int
    euler_characteristic: int
    n_holes: int
    boundary_edges: tuple[Edge, ...]
    planarity_residual: float
    min_degree: int
    notes: tuple[str, ...] = ()


def edge_face_table(spec: PolyhedronSpec) -> dict[Edge, list[int]]:
    """Map each undirected edge to the faces containing it, in face order."""
    table: dict[Edge, list[int]] = {}
    for fi, f in enumerate(spec.faces):
        for a, b in zip(f, f[1:] + f[:1]):
            table.setdefault(canon_edge(a, b), []).append(fi)
    return table


def _boundary_cycles(boundary: Sequence[Edge]) -> list[list[int]]:
    """Split boundary edges into simple cycles; raise if they do not chain up."""
    adj: dict[int, list[int]] = {}
    for u, v in boundary:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    for v, nbrs in adj.items():
        if len(nbrs) != 2:
            raise ValidationError(
                f"hole boundary vertex {v} has {len(nbrs)} boundary edges, expected 2"
            )
    cycles = []
    left = {canon_edge(u, v) for u, v in boundary}
    while left:
        u0, v0 = min(left)
        cycle = [u0]
        prev, cur = u0, v0
        left.discard(canon_edge(u0, v0))
        while cur != u0:
            cycle.append(cur)
            a, b = adj[cur]
            nxt = b if a == prev else a
            left.discard(canon_edge(cur, nxt))
            prev, cur = cur, nxt
        cycles.append(cycle)
    return cycles


def _face_planarity(spec: PolyhedronSpec) -> float:
    """Worst out-of-plane distance across faces, relative to mean edge length."""
    pts = spec.vertices
    lengths = [
        float(np.linalg.norm(pts[a] - pts[b]))
        for f in spec.faces
        for a, b in zip(f, f[1:] + f[:1])
    ]
    scale = float(np.mean(lengths))
    worst = 0.0
    for f in spec.faces:
        if len(f) == 3:
            continue
        p = pts[list(f)]
        c = p.mean(axis=0)
        q = p - c
        # smallest singular direction is the face normal
        _, s, vt = np.linalg.svd(q, full_matrices=False)
        normal = vt[-1]
        worst = max(worst, float(np.max(np.abs(q @ normal))))
    return worst / scale if scale > 0 else 0.0


def validate_polyhedron(spec: PolyhedronSpec) -> ShellReport:
    """Check shell structure and return a report.

    Raises ValidationError (or NonManifoldError naming the offending edge) for
    structural problems: degenerate faces, edges in more than two faces,
    inconsistent orientation, a disconnected shell graph, a broken Euler count,
    non-positive edge lengths, or non-planar faces.
    """
    notes = []
    for fi, f in enumerate(spec.faces):
        if len(f) < 3:
            raise ValidationError(f"{spec.name}: face {fi} has {len(f)} vertices")
        if len(set(f)) != len(f):
            raise ValidationError(f"{spec.name}: face {fi} repeats a vertex")

    table = edge_face_table(spec)
    for e, faces in table.items():
        if len(faces) > 2:
            raise NonManifoldError(e, len(faces), f"{spec.name}: edge {e} in {len(faces)} faces")

    directed = {}
    for fi, f in enumerate(spec.faces):
        for a, b in zip(f, f[1:] + f[:1]):
            if (a, b) in directed:
                raise ValidationError(
                    f"{spec.name}: faces {directed[(a, b)]} and {fi} traverse edge "
                    f"({a}, {b}) in the same direction (inconsistent orientation)"
                )
            directed[(a, b)] = fi

    boundary = tuple(sorted(e for e, faces in table.items() if len(faces) == 1))
    closed = not boundary
    n_holes = 0
    if boundary:
        n_holes = len(_boundary_cycles(boundary))

    # vertex connectivity over the edge set
    n = spec.n_vertices
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in table:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    stack = [0]
    seen[0] = True
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                stack.append(w)
    if not all(seen):
        raise ValidationError(f"{spec.name}: shell graph is disconnected")

    euler = n - len(table) + spec.n_faces
    expected = 2 - n_holes
    if euler != expected:
        raise ValidationError(
            f"{spec.name}: Euler characteristic {euler} != {expected} "
            f"(V={n}, E={len(table)}, F={spec.n_faces}, holes={n_holes})"
        )

    min_degree = min(len(a) for a in adj)
    if min_degree < 3:
        notes.append(f"minimum shell-graph degree is {min_degree}")

    residual = 0.0
    if spec.has_geometry:
        pts = spec.vertices
        for u, v in table:
            if not np.linalg.norm(pts[u] - pts[v]) > 0.0:
                raise ValidationError(f"{spec.name}: edge ({u}, {v}) has zero length")
        residual = _face_planarity(spec)
        if residual > PLANARITY_RTOL:
            raise ValidationError(
                f"{spec.name}: face planarity residual {residual:.3e} exceeds {PLANARITY_RTOL}"
            )

    return ShellReport(
        closed=closed,
        n_vertices=n,
        n_edges=len(table),
        n_faces=spec.n_faces,
        euler_characteristic=euler,
        n_holes=n_holes,
        boundary_edges=boundary,
        planarity_residual=residual,
        min_degree=min_degree,
        notes=tuple(notes),
    )
