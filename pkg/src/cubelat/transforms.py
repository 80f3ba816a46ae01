"""Surgery and symmetry: mirror extension, congruence, pushes, slabs.

Tower pushes: a cell line is the line of unit cells through a fixed
transverse cell, running along an axis and closing up around the
domain.  Pushing it toggles the four side walls of every cell on the
line; the only vertex stars that change are the four corner columns.
A cell line is a tower when the push again yields legal stars.

Slabs: a vertex plane whose stars are all screws with a common axis
parallel to the plane.  Removing one deletes the plane's horizontal
faces and the wall layer above it, then reglues the two sides with a
unit shear along both the normal and the transverse axis; insertion
is the exact inverse.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

from cubelat.lattice import (
    ALL_OPS,
    AXES,
    Axis,
    Domain,
    Edge,
    Face,
    FacePatch,
    PROPER_OPS,
    PointOp,
    Torus,
    Vec3,
    Window,
    add,
    neg,
    op_face,
    op_vec,
    sub,
    unit,
)
from cubelat.local import (
    SCREW_TAGS,
    Tag,
    VertexConfig,
    classify_vertex,
    screw_config,
    validate,
)

# ---------------------------------------------------------------------------
# Mirror extension


def reflect_extend(seed: FacePatch, target: Domain) -> FacePatch:
    """Extend a window patch by reflections in the planes half a step
    inside the window boundary, sampling the result over theceiling
    target domain.

    The mirror group folds any face into the seed window; a face of
    the extension is one whose fold lies in the seed.
    """
    if not isinstance(seed.domain, Window):
        raise ValueError("seed must live on a window")
    lo, hi = seed.domain.lo, seed.domain.hi
    widths = tuple(hi[a] - 1 - lo[a] for a in AXES)
    if any(w < 1 for w in widths):
        raise ValueError("seed window must span at least two cells per axis")
    if isinstance(target, Torus):
        for r in target.rows:
            for a in AXES:
                if r[a] % (2 * widths[a]):
                    raise ValueError(
                        f"period {r} incompatible with mirror cell {widths}"
                    )

    def fold_span(c: int, a: Axis) -> int:
        w = widths[a]
        t = (c - lo[a]) % (2 * w)
        return lo[a] + (t if t <= w else 2 * w - t)

    def fold_normal(v: int, a: Axis) -> int:
        w = widths[a]
        u = 2 * (v - lo[a]) - 1
        m = u % (4 * w)
        if m > 2 * w:
            m = 4 * w - m
        return lo[a] + (m + 1) // 2

    def fold_face(f: Face) -> Face:
        c = list(f.corner)
        for a in AXES:
            c[a] = fold_normal(c[a], a) if a == f.normal else fold_span(c[a], a)
        return Face((c[0], c[1], c[2]), f.normal)

    return FacePatch.make(
        target, (f for f in target.all_faces() if fold_face(f) in seed.faces)
    )


# ---------------------------------------------------------------------------
# Point group action and congruence


def op_domain(op: PointOp, domain: Domain) -> Domain:
    if isinstance(domain, Torus):
        return Torus.from_rows(op_vec(op, r) for r in domain.rows)
    a = op_vec(op, domain.lo)
    b = op_vec(op, domain.hi)
    return Window(
        tuple(min(x, y) for x, y in zip(a, b)),
        tuple(max(x, y) for x, y in zip(a, b)),
    )


def op_patch(op: PointOp, patch: FacePatch) -> FacePatch:
    dom = op_domain(op, patch.domain)
    return FacePatch.make(dom, (op_face(op, f) for f in patch.faces))


def match_translation(a: FacePatch, b: FacePatch) -> Optional[Vec3]:
    """A translation t with a.translate(t) == b, if one exists."""
    if a.domain != b.domain or len(a.faces) != len(b.faces):
        return None
    dom = a.domain
    if isinstance(dom, Window):
        return (0, 0, 0) if a.faces == b.faces else None
    for t in dom.vertices():
        if a.translate(t).faces == b.faces:
            return t
    return None


def congruent(
    a: FacePatch, b: FacePatch, proper_only: bool = False
) -> Optional[tuple[PointOp, Vec3]]:
    """A point op and translation carrying a onto b, or None."""
    if len(a.faces) != len(b.faces):
        return None
    ops = PROPER_OPS if proper_only else ALL_OPS
    for op in ops:
        try:
            moved = op_patch(op, a)
        except ValueError:
            continue
        if isinstance(b.domain, Window):
            if not isinstance(moved.domain, Window):
                continue
            span_m = sub(moved.domain.hi, moved.domain.lo)
            span_b = sub(b.domain.hi, b.domain.lo)
            if span_m != span_b:
                continue
            t = sub(b.domain.lo, moved.domain.lo)
            if moved.translate(t).faces == b.faces:
                return op, t
            continue
        if moved.domain != b.domain:
            continue
        t = match_translation(moved, b)
        if t is not None:
            return op, t
    return None


def symmetries(patch: FacePatch) -> list[tuple[PointOp, Vec3]]:
    """Every (op, translation) pair carrying a torus patch onto itself."""
    dom = patch.domain
    if not isinstance(dom, Torus):
        raise ValueError("symmetry groups are computed on torus patches")
    out = []
    for op in ALL_OPS:
        try:
            moved = op_patch(op, patch)
        except ValueError:
            continue
        if moved.domain != dom:
            continue
        for t in dom.vertices():
            if moved.translate(t).faces == patch.faces:
                out.append((op, t))
    return out


def vertex_transitive(patch: FacePatch) -> bool:
    """Does the symmetry group act transitively on lattice vertices?

    Every lattice vertex carries faces of a cubic polyhedron, so the
    orbit of any one vertex must sweep the whole quotient.
    """
    dom = patch.domain
    verts = list(dom.vertices())
    v0 = verts[0]
    orbit = {dom.wrap(add(op_vec(op, v0), t)) for op, t in symmetries(patch)}
    return len(orbit) == len(verts)


def reduce_by_congruence(
    patches: list[FacePatch], proper_only: bool = False
) -> list[list[int]]:
    """Group patch indices into congruence classes."""
    classes: list[list[int]] = []
    reps: list[FacePatch] = []
    for i, p in enumerate(patches):
        for cls, rep in zip(classes, reps):
            if congruent(p, rep, proper_only) is not None:
                cls.append(i)
                break
        else:
            classes.append([i])
            reps.append(p)
    return classes


# ---------------------------------------------------------------------------
# 2D quotient lattices (projection along an axis)


@dataclass(frozen=True)
class Lattice2:
    """Sublattice of Z^2 with rows (a, 0), (b, c) in Hermite form."""

    a: int
    b: int
    c: int

    @staticmethod
    def from_vectors(vectors: Iterable[tuple[int, int]]) -> "Lattice2":
        vs = [list(v) for v in vectors if v != (0, 0)]
        if not vs:
            raise ValueError("rank-deficient projection")
        # concentrate the second coordinate into one pivot row
        while True:
            nz = [r for r in vs if r[1] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[1]))
            p = nz[0]
            for r in nz[1:]:
                k = r[1] // p[1]
                r[0] -= k * p[0]
                r[1] -= k * p[1]
        pivot = next((r for r in vs if r[1] != 0), None)
        rest = [r[0] for r in vs if r[1] == 0]
        if pivot is None or not any(rest):
            raise ValueError("rank-deficient projection")
        import math

        a = math.gcd(*rest) if len(rest) > 1 else abs(rest[0])
        b, c = pivot
        if c < 0:
            b, c = -b, -c
        b %= a
        return Lattice2(a, b, c)

    def wrap(self, p: tuple[int, int]) -> tuple[int, int]:
        i, j = p
        k = j // self.c
        i -= k * self.b
        j -= k * self.c
        i %= self.a
        return (i, j)

    def cells(self) -> Iterable[tuple[int, int]]:
        for i in range(self.a):
            for j in range(self.c):
                yield (i, j)


def project_lattice(dom: Torus, axis: Axis) -> Lattice2:
    p, q = axis.others
    return Lattice2.from_vectors((r[p], r[q]) for r in dom.rows)


# ---------------------------------------------------------------------------
# Tower pushes


def _cell_walk(dom: Torus, axis: Axis, cell: tuple[int, int]):
    """Yield the base corner of each cell on the closed cell line."""
    p, q = axis.others
    c = [0, 0, 0]
    c[p], c[q] = cell
    start = dom.wrap((c[0], c[1], c[2]))
    cur = start
    while True:
        yield cur
        cur = dom.wrap(add(cur, unit(axis)))
        if cur == start:
            return


def cell_line_faces(dom: Torus, axis: Axis, cell: tuple[int, int]) -> frozenset[Face]:
    """The four side walls of every cell on the closed line."""
    p, q = axis.others
    out = set()
    for c in _cell_walk(dom, axis, cell):
        out.add(dom.wrap_face(Face(c, p)))
        out.add(dom.wrap_face(Face(add(c, unit(p)), p)))
        out.add(dom.wrap_face(Face(c, q)))
        out.add(dom.wrap_face(Face(add(c, unit(q)), q)))
    return frozenset(out)


def cell_line_vertices(dom: Torus, axis: Axis, cell: tuple[int, int]) -> frozenset[Vec3]:
    """The corner vertices of every cell on the closed line."""
    p, q = axis.others
    out = set()
    for c in _cell_walk(dom, axis, cell):
        for dp in (0, 1):
            for dq in (0, 1):
                v = add(add(c, unit(p, dp) if dp else (0, 0, 0)),
                        unit(q, dq) if dq else (0, 0, 0))
                out.add(dom.wrap(v))
    return frozenset(out)


def cell_rep(dom: Torus, axis: Axis, cell: tuple[int, int]) -> tuple[int, int]:
    return project_lattice(dom, axis).wrap(cell)


def push_cells(
    patch: FacePatch, axis: Axis, cells: Iterable[tuple[int, int]]
) -> FacePatch:
    """Toggle the side walls of the given cell lines (an involution)."""
    dom = patch.domain
    if not isinstance(dom, Torus):
        raise ValueError("pushes are defined on tori")
    faces = set(patch.faces)
    seen = set()
    for cell in cells:
        rep = cell_rep(dom, axis, cell)
        if rep in seen:
            continue
        seen.add(rep)
        faces ^= cell_line_faces(dom, axis, rep)
    return FacePatch(dom, frozenset(faces))


def push_valid(
    patch: FacePatch,
    axis: Axis,
    cells: Iterable[tuple[int, int]],
    mode: str = "cubic",
) -> Optional[FacePatch]:
    """The pushed patch if all affected stars stay legal, else None."""
    cells = list(cells)
    new = push_cells(patch, axis, cells)
    dom = patch.domain
    affected: set[Vec3] = set()
    for cell in cells:
        affected |= cell_line_vertices(dom, axis, cell_rep(dom, axis, cell))
    for v in affected:
        cfg = classify_vertex(new, v)
        if cfg is None:
            return None
        if mode == "cubic" and cfg.tag not in (Tag.M, Tag.S, Tag.Z):
            return None
    return new


def tower_cells(patch: FacePatch, axis: Axis) -> list[tuple[int, int]]:
    """Transverse cells whose line is individually pushable."""
    dom = patch.domain
    lat = project_lattice(dom, axis)
    out = []
    for cell in lat.cells():
        if push_valid(patch, axis, [cell]) is not None:
            out.append(cell)
    return out


@dataclass(frozen=True)
class Tower:
    """A pushable cell line together with the dot marks of its four
    corner columns (saddle, screw along the tower axis, or screw
    across it) and the face-diagram class they spell when no mark is
    an in-plane screw."""

    axis: Axis
    base: tuple[int, int]
    dots: tuple[str, ...]
    diagram_class: Optional[int]


def _corner_dots(
    patch: FacePatch, axis: Axis, base: tuple[int, int]
) -> Optional[tuple[str, ...]]:
    from cubelat.diagrams import CORNERS, DOT_SADDLE, DOT_SCREW, DOT_SIDE

    p, q = axis.others
    dots = []
    for di, dj in CORNERS:
        v = [0, 0, 0]
        v[p] = base[0] + di
        v[q] = base[1] + dj
        cfg = classify_vertex(patch, (v[0], v[1], v[2]))
        if cfg is None or cfg.tag not in (Tag.M, Tag.S, Tag.Z):
            return None
        if cfg.tag is Tag.M:
            dots.append(DOT_SADDLE)
        elif cfg.axis is axis:
            dots.append(DOT_SCREW)
        else:
            dots.append(DOT_SIDE)
    return tuple(dots)


def find_towers(patch: FacePatch, axis: Optional[Axis] = None) -> list[Tower]:
    """All individually pushable cell lines, along one axis or all
    three, labeled by their corner dot diagrams."""
    from cubelat.diagrams import DOT_SIDE, dot_class

    axes = AXES if axis is None else (axis,)
    out = []
    for a in axes:
        for base in tower_cells(patch, a):
            dots = _corner_dots(patch, a, base)
            if dots is None or DOT_SIDE in dots:
                cls = None
            else:
                cls = dot_class(dots)
            out.append(Tower(a, base, dots or (), cls))
    return out


def push_tower(patch: FacePatch, tower: Tower) -> FacePatch:
    new = push_valid(patch, tower.axis, [tower.base])
    if new is None:
        raise ValueError(f"cell line {tower.base} along "
                         f"{tower.axis.name} is not pushable")
    return new


# ---------------------------------------------------------------------------
# Slabs


@dataclass(frozen=True)
class Slab:
    normal: Axis
    level: int
    screw_axis: Axis


def _plane_vertices(dom: Torus, normal: Axis, level: int):
    p, q = normal.others
    periods = (dom.px, dom.py, dom.pz)
    for i in range(periods[p]):
        for j in range(periods[q]):
            v = [0, 0, 0]
            v[normal] = level
            v[p] = i
            v[q] = j
            yield (v[0], v[1], v[2])


def detect_slabs(patch: FacePatch) -> list[Slab]:
    """Vertex planes whose stars are all screws with one common axis
    parallel to the plane.
    """
    dom = patch.domain
    if not isinstance(dom, Torus):
        raise ValueError("slabs are defined on tori")
    periods = (dom.px, dom.py, dom.pz)
    out = []
    for normal in AXES:
        for level in range(periods[normal]):
            axis_seen: set[Axis] = set()
            ok = True
            for v in _plane_vertices(dom, normal, level):
                cfg = classify_vertex(patch, v)
                if cfg is None or cfg.tag not in SCREW_TAGS or cfg.axis == normal:
                    ok = False
                    break
                axis_seen.add(cfg.axis)
                if len(axis_seen) > 1:
                    ok = False
                    break
            if ok and len(axis_seen) == 1:
                out.append(Slab(normal, level, axis_seen.pop()))
    return out


@dataclass(frozen=True)
class SlabSpec:
    """Everything needed to regrow one removed z-normal slab at the
    top seam of a torus: the screw axis, the span axis and hand row at
    axis coordinate zero, read along the transverse axis.
    """

    screw_axis: Axis
    span0: Axis
    hands: tuple[Tag, ...]

    @property
    def bi_axis(self) -> Axis:
        return next(
            a for a in (Axis.X, Axis.Y) if a != self.screw_axis
        )

    @property
    def trivial(self) -> bool:
        flips = {
            (Tag.S, 0): Tag.S, (Tag.S, 1): Tag.Z,
            (Tag.Z, 0): Tag.Z, (Tag.Z, 1): Tag.S,
        }
        return all(
            h is flips[(self.hands[0], m % 2)]
            for m, h in enumerate(self.hands)
        )

    def omega(self) -> str:
        """Tower pattern along the transverse axis, two cells per
        letter: u for an S-seeded block, p for a Z-seeded block."""
        n = len(self.hands)
        for c in (0, 1):
            blocks = []
            ok = True
            for t in range(n // 2):
                a = self.hands[(c + 2 * t) % n]
                b = self.hands[(c + 2 * t + 1) % n]
                if a is b:
                    ok = False
                    break
                blocks.append("u" if a is Tag.S else "p")
            if ok:
                return "".join(blocks)
        raise ValueError("hand row has no two-cell block structure")


def _other_hand(t: Tag) -> Tag:
    return Tag.Z if t is Tag.S else Tag.S


def _slab_config(spec: SlabSpec, n: int, m: int) -> VertexConfig:
    span = spec.span0 if n % 2 == 0 else next(
        a for a in AXES if a not in (spec.screw_axis, spec.span0)
    )
    hand = spec.hands[m] if n % 2 == 0 else _other_hand(spec.hands[m])
    return screw_config(spec.screw_axis, span, hand)


def remove_slab(patch: FacePatch, level: int) -> tuple[FacePatch, SlabSpec]:
    """Remove the z-normal slab at the given vertex plane.

    The patch is first shifted so the slab sits at the top of the box;
    the plane's horizontal faces and the wall layer above are dropped,
    and the vertical period row loses one step of z and one step of
    the transverse axis.  Returns the surged patch and the spec that
    makes insert_slab an exact inverse.
    """
    dom = patch.domain
    if not isinstance(dom, Torus) or dom.pz < 2:
        raise ValueError("need a torus of height at least 2")
    shifted = patch.translate((0, 0, -(level + 1)))
    plane = dom.pz - 1
    periods = (dom.px, dom.py, dom.pz)
    cfg0 = classify_vertex(shifted, _first_plane_vertex(dom, plane))
    if cfg0 is None or cfg0.tag not in SCREW_TAGS or cfg0.axis is Axis.Z:
        raise ValueError(f"no slab at level {level}")
    a = cfg0.axis
    b = next(ax for ax in (Axis.X, Axis.Y) if ax != a)
    hands = []
    span0 = None
    for m in range(periods[b]):
        v = [0, 0, 0]
        v[b] = m
        v[2] = plane
        cfg = classify_vertex(shifted, (v[0], v[1], v[2]))
        if cfg is None or cfg.tag not in SCREW_TAGS or cfg.axis != a:
            raise ValueError(f"no slab at level {level}")
        hands.append(cfg.tag)
        if span0 is None:
            span0 = cfg.span_axis
        elif cfg.span_axis != span0:
            raise ValueError("slab span axis drifts along the transverse axis")
    spec = SlabSpec(a, span0, tuple(hands))
    kept = [f for f in shifted.faces if f.corner[2] != plane]
    r1, r2, r3 = dom.rows
    new_r3 = sub(sub(r3, unit(Axis.Z)), unit(b))
    new_dom = Torus.from_rows([r1, r2, new_r3])
    return FacePatch.make(new_dom, kept), spec


def _first_plane_vertex(dom: Torus, plane: int) -> Vec3:
    return (0, 0, plane)


def insert_slab(patch: FacePatch, spec: SlabSpec, count: int = 1) -> FacePatch:
    """Grow `count` copies of a slab at the top seam (inverse of
    remove_slab for count=1)."""
    out = patch
    for _ in range(count):
        out = _insert_one(out, spec)
    return out


def _insert_one(patch: FacePatch, spec: SlabSpec) -> FacePatch:
    dom = patch.domain
    if not isinstance(dom, Torus):
        raise ValueError("slabs are defined on tori")
    a, b = spec.screw_axis, spec.bi_axis
    periods = (dom.px, dom.py, dom.pz)
    if len(spec.hands) != periods[b]:
        raise ValueError("hand row does not match the transverse period")
    r1, r2, r3 = dom.rows
    new_r3 = add(add(r3, unit(Axis.Z)), unit(b))
    new_dom = Torus.from_rows([r1, r2, new_r3])
    plane = new_dom.pz - 1
    faces = set(patch.faces)
    added = set()
    for n in range(periods[a]):
        for m in range(periods[b]):
            v = [0, 0, 0]
            v[a] = n
            v[b] = m
            v[2] = plane
            cfg = _slab_config(spec, n, m)
            for f in cfg.faces_at((v[0], v[1], v[2])):
                added.add(new_dom.wrap_face(f))
    for f in added:
        if f.corner[2] < plane - 1 and f not in faces:
            raise ValueError("slab spec does not fit the seam")
    faces |= added
    return FacePatch.make(new_dom, faces)


def find_slabs(patch: FacePatch) -> list[Slab]:
    return detect_slabs(patch)


def _column_fits(
    patch: FacePatch, spec: SlabSpec, m: int
) -> bool:
    """Sub-seam fit of one screw column of a prospective slab."""
    dom = patch.domain
    a, b = spec.screw_axis, spec.bi_axis
    periods = (dom.px, dom.py, dom.pz)
    r1, r2, r3 = dom.rows
    new_dom = Torus.from_rows([r1, r2, add(add(r3, unit(Axis.Z)), unit(b))])
    plane = new_dom.pz - 1
    faces = patch.faces
    for n in range(periods[a]):
        v = [0, 0, 0]
        v[a] = n
        v[b] = m
        v[2] = plane
        cfg = _slab_config(spec, n, m)
        for f in cfg.faces_at((v[0], v[1], v[2])):
            w = new_dom.wrap_face(f)
            if w.corner[2] < plane - 1 and w not in faces:
                return False
    return True


def insertable_specs(patch: FacePatch) -> list[SlabSpec]:
    """Every slab spec that grows a valid slab at the top seam.

    A vertical screw column crossing the seam blocks all of them; over
    a layered region exactly one hand row fits per screw and span
    choice, its letters forced column by column by the faces already
    hanging below the seam.
    """
    dom = patch.domain
    if not isinstance(dom, Torus):
        raise ValueError("slabs are defined on tori")
    periods = (dom.px, dom.py, dom.pz)
    out = []
    for a in (Axis.X, Axis.Y):
        b = next(ax for ax in (Axis.X, Axis.Y) if ax != a)
        for span0 in (ax for ax in AXES if ax != a):
            choices: list[tuple[Tag, ...]] = [()]
            for m in range(periods[b]):
                grown = []
                for t in (Tag.S, Tag.Z):
                    probe = SlabSpec(a, span0, tuple([t] * periods[b]))
                    if _column_fits(patch, probe, m):
                        grown.extend(row + (t,) for row in choices)
                # sub-seam fit forces letters; cap the rare ambiguity
                choices = grown[:64]
                if not choices:
                    break
            for row in choices:
                spec = SlabSpec(a, span0, row)
                try:
                    new = _insert_one(patch, spec)
                except ValueError:
                    continue
                if validate(new).ok:
                    out.append(spec)
    return out
