"""Cubic lattice primitives: vectors, faces, edges, domains, patches.

Vertices live in Z^3.  A unit square face is named by its minimal corner
and its normal axis; a unit edge by its origin and its axis.  Face sets
are carried by a domain: either a boxed window of the lattice, or a
torus, the quotient of Z^3 by a finite index sublattice of translations
kept in lower triangular Hermite normal form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Iterator, NamedTuple, Union

Vec3 = tuple[int, int, int]


class Axis(IntEnum):
    X = 0
    Y = 1
    Z = 2

    @property
    def others(self) -> tuple["Axis", "Axis"]:
        """The two axes orthogonal to this one, in ascending order."""
        return _OTHERS[self]

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return self.name


AXES: tuple[Axis, Axis, Axis] = (Axis.X, Axis.Y, Axis.Z)

_OTHERS = {
    Axis.X: (Axis.Y, Axis.Z),
    Axis.Y: (Axis.X, Axis.Z),
    Axis.Z: (Axis.X, Axis.Y),
}


def unit(axis: Axis, sign: int = 1) -> Vec3:
    v = [0, 0, 0]
    v[axis] = sign
    return (v[0], v[1], v[2])


# The six unit direction vectors (edge germs at a vertex).
DIRS: tuple[Vec3, ...] = tuple(unit(a, s) for a in AXES for s in (1, -1))


def axis_of(d: Vec3) -> Axis:
    for a in AXES:
        if d[a] != 0:
            return a
    raise ValueError(f"zero direction {d}")


def sign_of(d: Vec3) -> int:
    return 1 if sum(d) > 0 else -1


def add(u: Vec3, v: Vec3) -> Vec3:
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2])


def sub(u: Vec3, v: Vec3) -> Vec3:
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def neg(v: Vec3) -> Vec3:
    return (-v[0], -v[1], -v[2])


def smul(k: int, v: Vec3) -> Vec3:
    return (k * v[0], k * v[1], k * v[2])


def dot(u: Vec3, v: Vec3) -> int:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross(u: Vec3, v: Vec3) -> Vec3:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


class Face(NamedTuple):
    """Unit square face: minimal corner plus normal axis."""

    corner: Vec3
    normal: Axis

    @property
    def spans(self) -> tuple[Axis, Axis]:
        return self.normal.others


class Edge(NamedTuple):
    """Unit edge from origin to origin + e_axis."""

    origin: Vec3
    axis: Axis

    def endpoints(self) -> tuple[Vec3, Vec3]:
        return self.origin, add(self.origin, unit(self.axis))


def face_vertices(f: Face) -> tuple[Vec3, Vec3, Vec3, Vec3]:
    """The four corners of a face in cyclic order."""
    p, q = f.spans
    c = f.corner
    ep, eq = unit(p), unit(q)
    return (c, add(c, ep), add(add(c, ep), eq), add(c, eq))


def face_edges(f: Face) -> tuple[Edge, Edge, Edge, Edge]:
    """The four boundary edges of a face."""
    p, q = f.spans
    c = f.corner
    return (
        Edge(c, p),
        Edge(c, q),
        Edge(add(c, unit(q)), p),
        Edge(add(c, unit(p)), q),
    )


def faces_of_edge(e: Edge) -> tuple[Face, Face, Face, Face]:
    """The four faces incident to an edge, in a fixed deterministic order.

    For each partner span axis in ascending order, the face whose corner
    sits at the edge origin comes before the face offset by -1 along the
    partner axis.
    """
    out = []
    for p in AXES:
        if p == e.axis:
            continue
        n = next(a for a in AXES if a != e.axis and a != p)
        out.append(Face(e.origin, n))
        out.append(Face(sub(e.origin, unit(p)), n))
    return (out[0], out[1], out[2], out[3])


def faces_of_vertex(v: Vec3) -> tuple[Face, ...]:
    """The twelve faces incident to a vertex, normals ascending."""
    out = []
    for n in AXES:
        p, q = n.others
        ep, eq = unit(p), unit(q)
        for i, j in ((0, 0), (1, 0), (0, 1), (1, 1)):
            out.append(Face(sub(sub(v, smul(i, ep)), smul(j, eq)), n))
    return tuple(out)


def edges_of_vertex(v: Vec3) -> tuple[Edge, ...]:
    """The six edges incident to a vertex."""
    out = []
    for a in AXES:
        out.append(Edge(v, a))
        out.append(Edge(sub(v, unit(a)), a))
    return tuple(out)


def face_from_span(v: Vec3, d1: Vec3, d2: Vec3) -> Face:
    """The face containing vertex v with side germs d1, d2 at v."""
    a1, a2 = axis_of(d1), axis_of(d2)
    if a1 == a2:
        raise ValueError(f"parallel germs {d1} {d2}")
    c = [v[0], v[1], v[2]]
    for d in (d1, d2):
        a = axis_of(d)
        if d[a] < 0:
            c[a] -= 1
    n = next(a for a in AXES if a != a1 and a != a2)
    return Face((c[0], c[1], c[2]), n)


def span_germs(f: Face, v: Vec3) -> tuple[Vec3, Vec3]:
    """The two side germs of face f at its corner v, span axes ascending."""
    p, q = f.spans
    r = sub(v, f.corner)
    if r[f.normal] != 0 or r[p] not in (0, 1) or r[q] not in (0, 1):
        raise ValueError(f"{v} is not a corner of {f}")
    dp = unit(p, 1 if r[p] == 0 else -1)
    dq = unit(q, 1 if r[q] == 0 else -1)
    return dp, dq


# ---------------------------------------------------------------------------
# Domains


def _hnf_reduce(m: list[list[int]]) -> list[list[int]]:
    """Lower triangular Hermite normal form of a nonsingular 3x3 row basis."""

    def concentrate(rows: list[int], col: int) -> int:
        # Integer row ops until a single row in `rows` has a nonzero entry
        # in `col`; returns that row index.
        while True:
            nz = [i for i in rows if m[i][col] != 0]
            if not nz:
                raise ValueError("singular basis")
            if len(nz) == 1:
                return nz[0]
            nz.sort(key=lambda i: abs(m[i][col]))
            p = nz[0]
            for i in nz[1:]:
                k = m[i][col] // m[p][col]
                m[i] = [m[i][t] - k * m[p][t] for t in range(3)]

    p2 = concentrate([0, 1, 2], 2)
    m[p2], m[2] = m[2], m[p2]
    p1 = concentrate([0, 1], 1)
    m[p1], m[1] = m[1], m[p1]
    if m[0][0] == 0:
        raise ValueError("singular basis")
    for i in range(3):
        if m[i][i] < 0:
            m[i] = [-t for t in m[i]]
    # Reduce off-diagonal entries: 0 <= entry < diagonal of its column.
    k = m[1][0] // m[0][0]
    m[1] = [m[1][t] - k * m[0][t] for t in range(3)]
    k = m[2][1] // m[1][1]
    m[2] = [m[2][t] - k * m[1][t] for t in range(3)]
    k = m[2][0] // m[0][0]
    m[2] = [m[2][t] - k * m[0][t] for t in range(3)]
    return m


@dataclass(frozen=True)
class Torus:
    """Quotient of Z^3 by the row lattice (px,0,0),(yx,py,0),(zx,zy,pz).

    The basis is kept in lower triangular Hermite normal form, so a
    rectangular torus has all shear entries zero.  Representatives live
    in the box [0,px) x [0,py) x [0,pz).
    """

    px: int
    py: int
    pz: int
    yx: int = 0
    zx: int = 0
    zy: int = 0

    def __post_init__(self) -> None:
        if self.px <= 0 or self.py <= 0 or self.pz <= 0:
            raise ValueError(f"nonpositive period in {self}")
        if not (0 <= self.yx < self.px):
            raise ValueError(f"unreduced shear yx in {self}")
        if not (0 <= self.zx < self.px and 0 <= self.zy < self.py):
            raise ValueError(f"unreduced shear zx/zy in {self}")

    @property
    def rows(self) -> tuple[Vec3, Vec3, Vec3]:
        return (
            (self.px, 0, 0),
            (self.yx, self.py, 0),
            (self.zx, self.zy, self.pz),
        )

    @staticmethod
    def from_rows(rows: Iterable[Vec3]) -> "Torus":
        m = _hnf_reduce([list(r) for r in rows])
        return Torus(
            px=m[0][0],
            py=m[1][1],
            pz=m[2][2],
            yx=m[1][0],
            zx=m[2][0],
            zy=m[2][1],
        )

    @property
    def volume(self) -> int:
        return self.px * self.py * self.pz

    @property
    def is_rectangular(self) -> bool:
        return self.yx == 0 and self.zx == 0 and self.zy == 0

    def wrap(self, v: Vec3) -> Vec3:
        x, y, z = v
        k = z // self.pz
        x -= k * self.zx
        y -= k * self.zy
        z -= k * self.pz
        k = y // self.py
        x -= k * self.yx
        y -= k * self.py
        x %= self.px
        return (x, y, z)

    def wrap_face(self, f: Face) -> Face:
        return Face(self.wrap(f.corner), f.normal)

    def wrap_edge(self, e: Edge) -> Edge:
        return Edge(self.wrap(e.origin), e.axis)

    def contains_vector(self, v: Vec3) -> bool:
        """True if v lies in the translation lattice."""
        return self.wrap(v) == (0, 0, 0)

    def vertices(self) -> Iterator[Vec3]:
        for x in range(self.px):
            for y in range(self.py):
                for z in range(self.pz):
                    yield (x, y, z)

    def all_faces(self) -> Iterator[Face]:
        for v in self.vertices():
            for n in AXES:
                yield Face(v, n)

    def all_edges(self) -> Iterator[Edge]:
        for v in self.vertices():
            for a in AXES:
                yield Edge(v, a)

    def check_edges(self) -> Iterator[Edge]:
        """Edges whose incidence must be checked: all of them."""
        return self.all_edges()

    def core_vertices(self) -> Iterator[Vec3]:
        """Vertices whose full star lies in the domain: all of them."""
        return self.vertices()


@dataclass(frozen=True)
class Window:
    """Axis aligned box of lattice vertices with inclusive bounds."""

    lo: Vec3
    hi: Vec3

    def __post_init__(self) -> None:
        if any(self.hi[a] < self.lo[a] for a in AXES):
            raise ValueError(f"empty window {self}")

    @property
    def volume(self) -> int:
        return (
            (self.hi[0] - self.lo[0] + 1)
            * (self.hi[1] - self.lo[1] + 1)
            * (self.hi[2] - self.lo[2] + 1)
        )

    def wrap(self, v: Vec3) -> Vec3:
        return v

    def wrap_face(self, f: Face) -> Face:
        return f

    def wrap_edge(self, e: Edge) -> Edge:
        return e

    def contains_vertex(self, v: Vec3) -> bool:
        return all(self.lo[a] <= v[a] <= self.hi[a] for a in AXES)

    def contains_face(self, f: Face) -> bool:
        c = f.corner
        if not self.contains_vertex(c):
            return False
        for a in f.spans:
            if c[a] + 1 > self.hi[a]:
                return False
        return True

    def contains_edge(self, e: Edge) -> bool:
        return self.contains_vertex(e.origin) and self.contains_vertex(
            add(e.origin, unit(e.axis))
        )

    def vertices(self) -> Iterator[Vec3]:
        for x in range(self.lo[0], self.hi[0] + 1):
            for y in range(self.lo[1], self.hi[1] + 1):
                for z in range(self.lo[2], self.hi[2] + 1):
                    yield (x, y, z)

    def all_faces(self) -> Iterator[Face]:
        for v in self.vertices():
            for n in AXES:
                f = Face(v, n)
                if self.contains_face(f):
                    yield f

    def all_edges(self) -> Iterator[Edge]:
        for v in self.vertices():
            for a in AXES:
                e = Edge(v, a)
                if self.contains_edge(e):
                    yield e

    def check_edges(self) -> Iterator[Edge]:
        """Edges whose four candidate faces all fit inside the window."""
        for e in self.all_edges():
            if all(self.contains_face(f) for f in faces_of_edge(e)):
                yield e

    def core_vertices(self) -> Iterator[Vec3]:
        """Vertices whose twelve candidate faces all fit in the window."""
        for v in self.vertices():
            if all(self.lo[a] + 1 <= v[a] <= self.hi[a] - 1 for a in AXES):
                yield v


Domain = Union[Torus, Window]


@dataclass(frozen=True)
class FacePatch:
    """A set of faces over a domain, stored as wrapped representatives."""

    domain: Domain
    faces: frozenset[Face]

    @staticmethod
    def make(domain: Domain, faces: Iterable[Face]) -> "FacePatch":
        wrapped = set()
        for f in faces:
            if isinstance(domain, Window) and not domain.contains_face(f):
                raise ValueError(f"face {f} outside window {domain}")
            wrapped.add(domain.wrap_face(f))
        return FacePatch(domain, frozenset(wrapped))

    def __len__(self) -> int:
        return len(self.faces)

    def has(self, f: Face) -> bool:
        return self.domain.wrap_face(f) in self.faces

    def faces_at(self, v: Vec3) -> tuple[Face, ...]:
        """Faces of the patch incident to vertex v, unwrapped around v."""
        return tuple(f for f in faces_of_vertex(v) if self.has(f))

    def edge_faces(self, e: Edge) -> tuple[Face, ...]:
        """Faces of the patch incident to edge e, unwrapped around e."""
        return tuple(f for f in faces_of_edge(e) if self.has(f))

    def translate(self, t: Vec3) -> "FacePatch":
        if isinstance(self.domain, Window):
            dom = Window(add(self.domain.lo, t), add(self.domain.hi, t))
            return FacePatch(
                dom, frozenset(Face(add(f.corner, t), f.normal) for f in self.faces)
            )
        return FacePatch.make(
            self.domain, (Face(add(f.corner, t), f.normal) for f in self.faces)
        )


def connected_components(patch: FacePatch) -> list[frozenset[Face]]:
    """Components of the face adjacency graph (faces sharing an edge)."""
    dom = patch.domain
    by_edge: dict[Edge, list[Face]] = {}
    for f in patch.faces:
        for e in face_edges(f):
            by_edge.setdefault(dom.wrap_edge(e), []).append(f)
    seen: set[Face] = set()
    comps = []
    for start in patch.faces:
        if start in seen:
            continue
        comp = {start}
        queue = [start]
        seen.add(start)
        while queue:
            f = queue.pop()
            for e in face_edges(f):
                for g in by_edge[dom.wrap_edge(e)]:
                    if g not in seen:
                        seen.add(g)
                        comp.add(g)
                        queue.append(g)
        comps.append(frozenset(comp))
    return comps


def is_connected(patch: FacePatch) -> bool:
    return len(connected_components(patch)) <= 1


# ---------------------------------------------------------------------------
# Point symmetries (signed permutations of the axes)


PointOp = tuple[Vec3, Vec3, Vec3]


def _all_ops() -> tuple[PointOp, ...]:
    ops = []
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            rows = []
            for i in range(3):
                r = [0, 0, 0]
                r[perm[i]] = signs[i]
                rows.append((r[0], r[1], r[2]))
            ops.append((rows[0], rows[1], rows[2]))
    return tuple(ops)


ALL_OPS: tuple[PointOp, ...] = _all_ops()

IDENTITY_OP: PointOp = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def op_det(op: PointOp) -> int:
    return dot(op[0], cross(op[1], op[2]))


PROPER_OPS: tuple[PointOp, ...] = tuple(op for op in ALL_OPS if op_det(op) == 1)


def op_vec(op: PointOp, v: Vec3) -> Vec3:
    return (dot(op[0], v), dot(op[1], v), dot(op[2], v))


def op_compose(a: PointOp, b: PointOp) -> PointOp:
    """The op applying b first, then a."""
    cols = [op_vec(a, op_vec(b, unit(ax))) for ax in AXES]
    rows = tuple(
        (cols[0][i], cols[1][i], cols[2][i]) for i in range(3)
    )
    return (rows[0], rows[1], rows[2])


def op_inverse(op: PointOp) -> PointOp:
    # Signed permutation inverse is the transpose.
    return tuple(
        (op[0][i], op[1][i], op[2][i]) for i in range(3)
    )  # type: ignore[return-value]


def op_face(op: PointOp, f: Face) -> Face:
    p, q = f.spans
    a = op_vec(op, f.corner)
    b = op_vec(op, add(f.corner, add(unit(p), unit(q))))
    corner = (min(a[0], b[0]), min(a[1], b[1]), min(a[2], b[2]))
    n = axis_of(op_vec(op, unit(f.normal)))
    return Face(corner, n)


def op_edge(op: PointOp, e: Edge) -> Edge:
    a = op_vec(op, e.origin)
    b = op_vec(op, add(e.origin, unit(e.axis)))
    origin = (min(a[0], b[0]), min(a[1], b[1]), min(a[2], b[2]))
    return Edge(origin, axis_of(sub(b, a)))
