"""Global invariants: counts, Euler characteristic, orientability,
genus, and combinatorial angle defects.

Every face meets a vertex in a quarter turn, so the angle defect at a
vertex with n incident faces is 2*pi - n*pi/2; defects are reported in
units of pi as exact fractions.  For closed oriented surfaces the
defects sum to 2*pi times the Euler characteristic.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from cubelat.lattice import (
    AXES,
    Axis,
    Edge,
    Face,
    FacePatch,
    add,
    connected_components,
    face_vertices,
    faces_of_vertex,
    unit,
)


def _directed_boundary(f: Face):
    """The four boundary edges of f in cycle order, each as
    (edge, direction along its axis)."""
    p, q = f.spans
    c = f.corner
    v0 = c
    v1 = add(c, unit(p))
    v2 = add(v1, unit(q))
    v3 = add(c, unit(q))
    yield Edge(v0, p), 1
    yield Edge(v1, q), 1
    yield Edge(v3, p), -1
    yield Edge(v0, q), -1


@dataclass(frozen=True)
class TopologyReport:
    n_vertices: int
    n_edges: int
    n_faces: int
    euler: int
    closed: bool
    orientable: bool
    n_components: int
    genus: Optional[int]
    defect_total: Fraction  # in units of pi

    def summary(self) -> str:
        head = (
            f"V={self.n_vertices} E={self.n_edges} F={self.n_faces}"
            f" euler={self.euler}"
        )
        shape = "closed" if self.closed else "with boundary"
        orient = "orientable" if self.orientable else "nonorientable"
        tail = f"{shape}, {orient}, components={self.n_components}"
        if self.genus is not None:
            tail += f", genus={self.genus}"
        return f"{head} ({tail}), defect={self.defect_total}*pi"


def incident_vertices(patch: FacePatch) -> dict:
    """Vertex -> number of incident faces, over wrapped vertices."""
    wrap = patch.domain.wrap
    count: dict = defaultdict(int)
    for f in patch.faces:
        for v in face_vertices(f):
            count[wrap(v)] += 1
    return dict(count)


def defects(patch: FacePatch) -> dict:
    """Angle defect per vertex in units of pi (2 - n/2 for n faces)."""
    return {
        v: Fraction(2) - Fraction(n, 2)
        for v, n in incident_vertices(patch).items()
    }


def _edge_sides(patch: FacePatch):
    """Wrapped edge -> list of (face, traversal direction)."""
    sides: dict = defaultdict(list)
    for f in patch.faces:
        for e, s in _directed_boundary(f):
            sides[patch.domain.wrap_edge(e)].append((f, s))
    return sides


def is_closed(patch: FacePatch) -> bool:
    return all(len(v) == 2 for v in _edge_sides(patch).values())


def face_orientations(patch: FacePatch) -> Optional[dict]:
    """Flip bit per face giving consistent orientations, or None when
    the patch is nonorientable.  Two faces agree across a shared edge
    when they traverse it in opposite directions."""
    sides = _edge_sides(patch)
    flip: dict = {}
    for start in patch.faces:
        if start in flip:
            continue
        flip[start] = 0
        stack = [start]
        while stack:
            f = stack.pop()
            for e, s in _directed_boundary(f):
                entries = sides[patch.domain.wrap_edge(e)]
                if len(entries) != 2:
                    continue
                for g, t in entries:
                    if g == f and t == s:
                        continue
                    want = flip[f] ^ (1 if s == t else 0)
                    if g not in flip:
                        flip[g] = want
                        stack.append(g)
                    elif flip[g] != want:
                        return None
    return flip


def is_orientable(patch: FacePatch) -> bool:
    return face_orientations(patch) is not None


def normal_face_profile(patch: FacePatch, v) -> tuple:
    """Per normal axis, how many of the four candidate faces at v are
    present (a cubic vertex shows (2, 2, 2))."""
    counts = [0, 0, 0]
    for f in faces_of_vertex(v):
        if patch.has(f):
            counts[f.normal] += 1
    return tuple(counts)


def topology_report(patch: FacePatch) -> TopologyReport:
    sides = _edge_sides(patch)
    nv = len(incident_vertices(patch))
    ne = len(sides)
    nf = len(patch.faces)
    euler = nv - ne + nf
    closed = all(len(v) == 2 for v in sides.values())
    orientable = is_orientable(patch)
    ncomp = len(connected_components(patch))
    genus = None
    if closed and orientable and ncomp == 1 and nf:
        # euler = 2 - 2g for one closed oriented surface
        genus = (2 - euler) // 2
    total = sum(defects(patch).values(), Fraction(0))
    return TopologyReport(
        nv, ne, nf, euler, closed, orientable, ncomp, genus, total
    )
