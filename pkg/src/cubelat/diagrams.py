"""Planar slice diagrams and the local census around a face.

A planar diagram records a slice through a patch along a lattice plane
with a chosen normal axis: shaded cells are the faces lying in the
plane, above-edges mark in-plane unit segments bounding a face on the
positive side of the plane, below-edges on the negative side.  The two
edge sets are not disjoint: a wall crossing the plane colors its
segment on both sides.

Cells are named by their minimal corner in slice coordinates, which
are the two axes other than the plane normal in ascending order.
Segments are triples (u, v, d) running from (u, v) one unit toward
+u (d = 0) or +v (d = 1).

ASCII glyph table (to_ascii):

    +     lattice vertex
    ##    cell carrying a face of the plane
    ==    horizontal segment with a face above
    --    horizontal segment with a face below
    %%    horizontal segment with faces on both sides
    I     vertical segment with a face above
    :     vertical segment with a face below
    H     vertical segment with faces on both sides

The local census enumerates every consistent assignment of legal
vertex stars to the four corners of one cell and buckets the resulting
3x3 pictures by the kind of the center cell: a normal face (four
creases), a face with one flange, a face with two opposite flanges, or
a missing square.  Pictures are counted up to the isometries of the
grid fixing the center cell and swapping of the two edge colors.
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional, Union

from .lattice import (
    AXES,
    Axis,
    Face,
    FacePatch,
    Torus,
    Vec3,
    Window,
    faces_of_vertex,
)
from .local import CUBIC_CONFIGS, Tag, VertexConfig, classify_vertex

Cell2 = tuple[int, int]
Seg2 = tuple[int, int, int]
Plane = tuple[Axis, int]


def plane_axes(normal: Axis) -> tuple[Axis, Axis]:
    """In-plane axes (u, v) of a slice plane, in ascending order."""
    return normal.others


def embed(plane: Plane, u: int, v: int) -> Vec3:
    normal, level = plane
    p, q = plane_axes(normal)
    out = [0, 0, 0]
    out[normal] = level
    out[p] = u
    out[q] = v
    return (out[0], out[1], out[2])


def cell_face(plane: Plane, cell: Cell2) -> Face:
    return Face(embed(plane, *cell), plane[0])


def seg_side_face(plane: Plane, seg: Seg2, side: int) -> Face:
    """The candidate face hanging off a segment above (+1) or below (-1)."""
    normal, _ = plane
    p, q = plane_axes(normal)
    u, v, d = seg
    face_normal = q if d == 0 else p
    corner = embed(plane, u, v)
    if side < 0:
        moved = list(corner)
        moved[normal] -= 1
        corner = (moved[0], moved[1], moved[2])
    return Face(corner, face_normal)


@dataclass(frozen=True)
class PlanarDiagram:
    """One slice of a patch: shaded cells plus colored boundary segments.

    `origin` and `size` fix the rendered window in slice coordinates;
    for a torus slice the window is one fundamental rectangle and the
    segment sets include the wrapped top and right borders so renders
    can close the frame without re-deriving the wrap.
    """

    plane: Plane
    origin: Cell2
    size: tuple[int, int]
    shaded: frozenset[Cell2]
    above_edges: frozenset[Seg2]
    below_edges: frozenset[Seg2]

    def _hglyph(self, u: int, v: int) -> str:
        seg = (u, v, 0)
        up, dn = seg in self.above_edges, seg in self.below_edges
        if up and dn:
            return "%%"
        return "==" if up else "--" if dn else "  "

    def _vglyph(self, u: int, v: int) -> str:
        seg = (u, v, 1)
        up, dn = seg in self.above_edges, seg in self.below_edges
        if up and dn:
            return "H"
        return "I" if up else ":" if dn else " "

    def to_ascii(self) -> str:
        ou, ov = self.origin
        su, sv = self.size
        lines = []
        for v in range(ov + sv, ov - 1, -1):
            row = []
            for u in range(ou, ou + su):
                row.append("+" + self._hglyph(u, v))
            row.append("+")
            lines.append("".join(row))
            if v > ov:
                row = []
                for u in range(ou, ou + su):
                    fill = "##" if (u, v - 1) in self.shaded else "  "
                    row.append(self._vglyph(u, v - 1) + fill)
                row.append(self._vglyph(ou + su, v - 1))
                lines.append("".join(row))
        return "\n".join(lines)

    def to_svg(self, scale: int = 28) -> str:
        ou, ov = self.origin
        su, sv = self.size
        pad = scale // 2
        w, h = su * scale + 2 * pad, sv * scale + 2 * pad

        def pt(u: float, v: float) -> tuple[float, float]:
            return (pad + (u - ou) * scale, pad + (ov + sv - v) * scale)

        bits = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
            f'viewBox="0 0 {w} {h}">',
            f'<rect width="{w}" height="{h}" fill="white"/>',
        ]
        for u, v in sorted(self.shaded):
            x, y = pt(u, v + 1)
            bits.append(
                f'<rect x="{x:g}" y="{y:g}" width="{scale}" height="{scale}" '
                'fill="#c9c9c9"/>'
            )
        for k in range(su + 1):
            x, y = pt(ou + k, ov)
            x2, y2 = pt(ou + k, ov + sv)
            bits.append(
                f'<line x1="{x:g}" y1="{y:g}" x2="{x2:g}" y2="{y2:g}" '
                'stroke="#e4e4e4" stroke-width="1"/>'
            )
        for k in range(sv + 1):
            x, y = pt(ou, ov + k)
            x2, y2 = pt(ou + su, ov + k)
            bits.append(
                f'<line x1="{x:g}" y1="{y:g}" x2="{x2:g}" y2="{y2:g}" '
                'stroke="#e4e4e4" stroke-width="1"/>'
            )

        def stroke(seg: Seg2, color: str, dashed: bool) -> str:
            u, v, d = seg
            x1, y1 = pt(u, v)
            x2, y2 = pt(u + 1, v) if d == 0 else pt(u, v + 1)
            dash = ' stroke-dasharray="6 4"' if dashed else ""
            return (
                f'<line x1="{x1:g}" y1="{y1:g}" x2="{x2:g}" y2="{y2:g}" '
                f'stroke="{color}" stroke-width="3"{dash}/>'
            )

        for seg in sorted(self.below_edges):
            bits.append(stroke(seg, "#9b9b9b", False))
        for seg in sorted(self.above_edges):
            bits.append(stroke(seg, "#111111", seg in self.below_edges))
        bits.append("</svg>")
        return "\n".join(bits)


def slice_diagram(patch: FacePatch, plane: Plane) -> PlanarDiagram:
    """Slice a patch along a lattice plane.

    On a torus the window is one fundamental rectangle of the slice.
    On a window domain boundary segments only report faces the domain
    can hold, so the border of the picture is partial.
    """
    normal, level = plane
    dom = patch.domain
    p, q = plane_axes(normal)
    if isinstance(dom, Torus):
        periods = (dom.px, dom.py, dom.pz)
        origin = (0, 0)
        size = (periods[p], periods[q])
    else:
        if not (dom.lo[normal] <= level <= dom.hi[normal]):
            raise ValueError(f"plane {plane} outside {dom}")
        origin = (dom.lo[p], dom.lo[q])
        size = (dom.hi[p] - dom.lo[p], dom.hi[q] - dom.lo[q])
    ou, ov = origin
    su, sv = size
    shaded = set()
    for u in range(ou, ou + su):
        for v in range(ov, ov + sv):
            if patch.has(cell_face(plane, (u, v))):
                shaded.add((u, v))
    above, below = set(), set()
    for u in range(ou, ou + su + 1):
        for v in range(ov, ov + sv + 1):
            for d in (0, 1):
                if d == 0 and u == ou + su:
                    continue
                if d == 1 and v == ov + sv:
                    continue
                seg = (u, v, d)
                if patch.has(seg_side_face(plane, seg, +1)):
                    above.add(seg)
                if patch.has(seg_side_face(plane, seg, -1)):
                    below.add(seg)
    return PlanarDiagram(
        plane, origin, size, frozenset(shaded), frozenset(above), frozenset(below)
    )


# ---------------------------------------------------------------------------
# Local diagrams around one cell


class CenterKind(Enum):
    NORMAL = "normal"
    ONE_FLANGE = "one_flange"
    TWO_FLANGE = "two_flange"
    MISSING = "missing"


CORNERS: tuple[Cell2, ...] = ((0, 0), (1, 0), (0, 1), (1, 1))
DOT_SADDLE = "o"
DOT_SCREW = "*"
DOT_SIDE = "-"

LOCAL_CELLS: tuple[Cell2, ...] = tuple(
    (du, dv) for du in (-1, 0, 1) for dv in (-1, 0, 1)
)
LOCAL_SEGS: tuple[Seg2, ...] = tuple(
    [(eu, ev, 0) for eu in (-1, 0, 1) for ev in (0, 1)]
    + [(eu, ev, 1) for eu in (0, 1) for ev in (-1, 0, 1)]
)

# Rotations then reflections of the square grid, as 2x2 integer matrices.
_D4 = (
    (1, 0, 0, 1),
    (0, -1, 1, 0),
    (-1, 0, 0, -1),
    (0, 1, -1, 0),
    (-1, 0, 0, 1),
    (1, 0, 0, -1),
    (0, 1, 1, 0),
    (0, -1, -1, 0),
)


def _map_cell(m: tuple[int, int, int, int], c: Cell2) -> Cell2:
    a, b, cc, d = m
    return (a * c[0] + b * c[1], cc * c[0] + d * c[1])


def _map_seg(m: tuple[int, int, int, int], s: Seg2) -> Seg2:
    # Doubled midpoint offsets from the center of the center cell keep
    # everything integral under the eight grid isometries.
    u, v, d = s
    mid = (2 * u, 2 * v - 1) if d == 0 else (2 * u - 1, 2 * v)
    a, b, cc, dd = m
    m0 = a * mid[0] + b * mid[1]
    m1 = cc * mid[0] + dd * mid[1]
    if m1 % 2:
        return (m0 // 2, (m1 + 1) // 2, 0)
    return ((m0 + 1) // 2, m1 // 2, 1)


def _map_corner(m: tuple[int, int, int, int], c: Cell2) -> Cell2:
    mid = (2 * c[0] - 1, 2 * c[1] - 1)
    a, b, cc, d = m
    m0 = a * mid[0] + b * mid[1]
    m1 = cc * mid[0] + d * mid[1]
    return ((m0 + 1) // 2, (m1 + 1) // 2)


def _dot(cfg: VertexConfig, normal: Axis) -> str:
    if cfg.tag is Tag.M:
        return DOT_SADDLE
    if cfg.axis is normal:
        return DOT_SCREW
    return DOT_SIDE


_Key = tuple[
    tuple[Cell2, ...], tuple[Seg2, ...], tuple[Seg2, ...], tuple[str, ...]
]


def _canonical(
    shaded: Iterable[Cell2],
    above: Iterable[Seg2],
    below: Iterable[Seg2],
    dots: dict[Cell2, str],
) -> _Key:
    best: Optional[_Key] = None
    colorings = ((above, below), (below, above))
    for m in _D4:
        cells = tuple(sorted(_map_cell(m, c) for c in shaded))
        corner_map = {_map_corner(m, c): dots[c] for c in CORNERS}
        dot_row = tuple(corner_map[c] for c in CORNERS)
        for up, dn in colorings:
            key = (
                cells,
                tuple(sorted(_map_seg(m, s) for s in up)),
                tuple(sorted(_map_seg(m, s) for s in dn)),
                dot_row,
            )
            if best is None or key < best:
                best = key
    assert best is not None
    return best


@dataclass(frozen=True)
class LocalDiagram:
    """Canonical 3x3 picture around one cell.

    Coordinates are relative to the center cell.  `dots` lists the
    slice symbols of the four center-cell corners in the fixed order
    (0,0), (1,0), (0,1), (1,1): 'o' for a monkey-saddle, '*' for a
    screw whose axis crosses the plane, '-' for a screw whose axis
    lies in the plane.  `assignment` is a realizing legal vertex star
    for each corner, in the frame the diagram was captured in; the
    four stars tile a 3x3x1 box of cells around the center.
    """

    center: CenterKind
    shaded: tuple[Cell2, ...]
    above_edges: tuple[Seg2, ...]
    below_edges: tuple[Seg2, ...]
    dots: tuple[str, ...]
    assignment: tuple[tuple[Cell2, VertexConfig], ...] = field(
        compare=False, repr=False
    )

    @property
    def black_dots(self) -> int:
        return sum(1 for d in self.dots if d == DOT_SCREW)

    @property
    def all_dotted(self) -> bool:
        return all(d != DOT_SIDE for d in self.dots)

    def sort_key(self) -> tuple:
        n = self.black_dots
        adjacency = 0
        if n == 2:
            black = {c for c, d in zip(CORNERS, self.dots) if d == DOT_SCREW}
            adjacency = 1 if black in ({(0, 0), (1, 1)}, {(1, 0), (0, 1)}) else 0
        side = sum(1 for d in self.dots if d == DOT_SIDE)
        return (side, n, adjacency, self.shaded, self.above_edges, self.below_edges)

    def to_planar(self) -> PlanarDiagram:
        return PlanarDiagram(
            (Axis.Z, 0),
            (-1, -1),
            (3, 3),
            frozenset(self.shaded),
            frozenset(self.above_edges),
            frozenset(self.below_edges),
        )

    def to_ascii(self) -> str:
        """Planar picture with the four center corners overprinted by
        their dot marks."""
        lines = [list(s) for s in self.to_planar().to_ascii().splitlines()]
        # planar origin is (-1, -1), rows run top-down from v = 2
        for (i, j), mark in zip(CORNERS, self.dots):
            lines[2 * (2 - j)][3 * (i + 1)] = mark
        return "\n".join("".join(s) for s in lines)


def dot_class(dots: Iterable[str]) -> int:
    """Class 1..6 of a dot diagram around a normal face.

    Ordered by black-dot count, with the two-dot adjacent pair before
    the diagonal pair.  Classes 2 and 5 are the odd ones that cannot
    occur around a missing square.
    """
    row = tuple(dots)
    if len(row) != 4 or any(d not in (DOT_SADDLE, DOT_SCREW) for d in row):
        raise ValueError(f"not a dot diagram: {row!r}")
    n = row.count(DOT_SCREW)
    if n == 0:
        return 1
    if n == 1:
        return 2
    if n == 3:
        return 5
    if n == 4:
        return 6
    black = {c for c, d in zip(CORNERS, row) if d == DOT_SCREW}
    return 4 if black in ({(0, 0), (1, 1)}, {(1, 0), (0, 1)}) else 3


def _center_kind(
    present: frozenset[Face], plane: Plane
) -> tuple[CenterKind, int]:
    center = cell_face(plane, (0, 0))
    if center not in present:
        return CenterKind.MISSING, 0
    flanged = [
        c
        for c in ((0, -1), (-1, 0), (0, 1), (1, 0))
        if cell_face(plane, c) in present
    ]
    if not flanged:
        return CenterKind.NORMAL, 0
    if len(flanged) == 1:
        return CenterKind.ONE_FLANGE, 1
    if len(flanged) == 2 and flanged[0] == (-flanged[1][0], -flanged[1][1]):
        return CenterKind.TWO_FLANGE, 2
    raise ValueError(f"illegal flange set {flanged} around one face")


def _picture(
    lookup, plane: Plane
) -> tuple[tuple[Cell2, ...], tuple[Seg2, ...], tuple[Seg2, ...]]:
    shaded = tuple(
        c for c in LOCAL_CELLS if lookup(cell_face(plane, c))
    )
    above = tuple(
        s for s in LOCAL_SEGS if lookup(seg_side_face(plane, s, +1))
    )
    below = tuple(
        s for s in LOCAL_SEGS if lookup(seg_side_face(plane, s, -1))
    )
    return shaded, above, below


def local_diagram(patch: FacePatch, plane: Plane, cell: Cell2) -> LocalDiagram:
    """The canonical local diagram of a patch around one cell of a slice.

    The patch must be locally legal at the four corners of the cell.
    """
    normal, _level = plane
    base = embed(plane, *cell)
    shifted_plane = (normal, 0)

    # relative lookups: place the cell at the origin of its plane
    def rel(f: Face) -> bool:
        corner = (
            f.corner[0] + base[0],
            f.corner[1] + base[1],
            f.corner[2] + base[2],
        )
        return patch.has(Face(corner, f.normal))

    shaded, above, below = _picture(rel, shifted_plane)
    present = frozenset(
        f
        for c in LOCAL_CELLS
        for f in [cell_face(shifted_plane, c)]
        if rel(f)
    )
    kind, _ = _center_kind(present, shifted_plane)
    dots: dict[Cell2, str] = {}
    assignment = []
    for corner in CORNERS:
        v = embed(shifted_plane, *corner)
        av = (v[0] + base[0], v[1] + base[1], v[2] + base[2])
        cfg = classify_vertex(patch, av)
        if cfg is None or cfg.tag not in (Tag.M, Tag.S, Tag.Z):
            raise ValueError(f"vertex {av} is not a legal cubic star")
        dots[corner] = _dot(cfg, normal)
        assignment.append((corner, cfg))
    cs, ca, cb, cd = _canonical(shaded, above, below, dots)
    return LocalDiagram(kind, cs, ca, cb, cd, tuple(assignment))


def diagram_from_assignment(
    assignment: Iterable[tuple[Cell2, VertexConfig]], normal: Axis = Axis.Z
) -> LocalDiagram:
    """Rebuild the canonical local diagram realized by corner stars."""
    plane = (normal, 0)
    faces: set[Face] = set()
    dots: dict[Cell2, str] = {}
    pairs = tuple(assignment)
    for corner, cfg in pairs:
        v = embed(plane, *corner)
        star = frozenset(cfg.faces_at(v))
        universe = frozenset(faces_of_vertex(v))
        for done_corner, done_cfg in pairs:
            if done_corner == corner:
                continue
            w = embed(plane, *done_corner)
            other = frozenset(done_cfg.faces_at(w))
            shared = universe & frozenset(faces_of_vertex(w))
            if star & shared != other & shared:
                raise ValueError("corner stars disagree on a shared face")
        faces |= star
        dots[corner] = _dot(cfg, normal)
    shaded, above, below = _picture(lambda f: f in faces, plane)
    kind, _ = _center_kind(frozenset(faces), plane)
    cs, ca, cb, cd = _canonical(shaded, above, below, dots)
    return LocalDiagram(kind, cs, ca, cb, cd, pairs)


@dataclass(frozen=True)
class DiagramCensus:
    center: CenterKind
    count: int
    diagrams: tuple[LocalDiagram, ...]

    def summary(self) -> str:
        return f"{self.center.value}: {self.count} diagrams"


@lru_cache(maxsize=None)
def _census_all() -> dict[CenterKind, tuple[LocalDiagram, ...]]:
    plane = (Axis.Z, 0)
    verts = [embed(plane, *c) for c in CORNERS]
    stars = [
        [(cfg, frozenset(cfg.faces_at(v))) for cfg in CUBIC_CONFIGS]
        for v in verts
    ]
    universes = [frozenset(faces_of_vertex(v)) for v in verts]

    def agree(i: int, fi: frozenset, j: int, fj: frozenset) -> bool:
        shared = universes[i] & universes[j]
        return fi & shared == fj & shared

    found: dict[CenterKind, dict[_Key, LocalDiagram]] = {
        kind: {} for kind in CenterKind
    }
    for (c0, f0), (c1, f1) in product(stars[0], stars[1]):
        if not agree(0, f0, 1, f1):
            continue
        for c2, f2 in stars[2]:
            if not (agree(0, f0, 2, f2) and agree(1, f1, 2, f2)):
                continue
            for c3, f3 in stars[3]:
                if not (
                    agree(0, f0, 3, f3)
                    and agree(1, f1, 3, f3)
                    and agree(2, f2, 3, f3)
                ):
                    continue
                faces = f0 | f1 | f2 | f3
                kind, _ = _center_kind(faces, plane)
                configs = (c0, c1, c2, c3)
                dots = {
                    corner: _dot(cfg, Axis.Z)
                    for corner, cfg in zip(CORNERS, configs)
                }
                shaded, above, below = _picture(lambda f: f in faces, plane)
                key = _canonical(shaded, above, below, dots)
                bucket = found[kind]
                if key not in bucket:
                    bucket[key] = LocalDiagram(
                        kind, *key, tuple(zip(CORNERS, configs))
                    )
    return {
        kind: tuple(sorted(bucket.values(), key=LocalDiagram.sort_key))
        for kind, bucket in found.items()
    }


def census_face_diagrams(center: Union[CenterKind, str]) -> DiagramCensus:
    """All completed local diagrams around a cell of the given kind.

    Derived by exhausting consistent corner assignments of the sixteen
    legal stars, so the counts are computed, not transcribed.
    """
    kind = CenterKind(center) if not isinstance(center, CenterKind) else center
    diagrams = _census_all()[kind]
    return DiagramCensus(kind, len(diagrams), diagrams)
