"""Local vertex analysis: legal vertex stars and their classification.

The faces incident to a vertex v are encoded by their germ pairs, the
two unit directions along the face sides at v.  Viewing the six germs
as vertices of an octahedron, a face star is an edge set on it.  A
vertex of a cubic polyhedron must have a star forming a Hamiltonian
cycle of the octahedron; there are exactly 16 such configurations:

  * 4 saddles (tag M), one per body diagonal,
  * 6 + 6 screws (tags S and Z), one per axis, transverse span axis
    and handedness.

Discrete minimal surfaces additionally allow flat vertices (all four
faces of one normal) and empty vertices, for 20 local configurations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

from cubelat.lattice import (
    AXES,
    Axis,
    DIRS,
    Edge,
    Face,
    FacePatch,
    Torus,
    Vec3,
    Window,
    add,
    axis_of,
    connected_components,
    cross,
    face_edges,
    face_from_span,
    faces_of_vertex,
    neg,
    span_germs,
    unit,
)

GermPair = tuple[Vec3, Vec3]


def germ_pair(d1: Vec3, d2: Vec3) -> GermPair:
    a, b = sorted((d1, d2))
    return (a, b)


# Slot order fixed by the face order around the origin vertex.
FACE_SLOTS: tuple[Face, ...] = faces_of_vertex((0, 0, 0))
SLOT_PAIRS: tuple[GermPair, ...] = tuple(
    germ_pair(*span_germs(f, (0, 0, 0))) for f in FACE_SLOTS
)
PAIR_SLOT: dict[GermPair, int] = {p: i for i, p in enumerate(SLOT_PAIRS)}


class Tag(Enum):
    M = "M"
    S = "S"
    Z = "Z"
    FLAT = "flat"
    EMPTY = "empty"


SCREW_TAGS = (Tag.S, Tag.Z)


@dataclass(frozen=True)
class VertexConfig:
    """One legal vertex star.

    For screws, `axis` is the screw axis, `span_axis` the transverse
    axis carrying the upper wall pair.  For saddles, `diagonal` is the
    body diagonal of the normal, normalized to positive x component.
    For flats, `axis` is the face normal.
    """

    pairs: frozenset[GermPair]
    tag: Tag
    axis: Optional[Axis] = None
    span_axis: Optional[Axis] = None
    diagonal: Optional[Vec3] = None
    cycle: tuple[Vec3, ...] = field(default=(), compare=False)

    @property
    def mask(self) -> int:
        m = 0
        for p in self.pairs:
            m |= 1 << PAIR_SLOT[p]
        return m

    def faces_at(self, v: Vec3) -> frozenset[Face]:
        return frozenset(face_from_span(v, d1, d2) for d1, d2 in self.pairs)


def _cycle_of(pairs: frozenset[GermPair]) -> Optional[tuple[Vec3, ...]]:
    """The germ cycle of a 2-regular star covering all six germs."""
    nbrs: dict[Vec3, list[Vec3]] = {d: [] for d in DIRS}
    for d1, d2 in pairs:
        nbrs[d1].append(d2)
        nbrs[d2].append(d1)
    if any(len(v) != 2 for v in nbrs.values()):
        return None
    start = DIRS[0]
    cyc = [start]
    prev, cur = None, start
    for _ in range(6):
        a, b = nbrs[cur]
        nxt = b if a == prev else a
        prev, cur = cur, nxt
        if cur == start:
            break
        cyc.append(cur)
    if len(cyc) != 6 or cur != start:
        return None
    return tuple(cyc)


def _classify_cycle(cyc: tuple[Vec3, ...]) -> VertexConfig:
    pairs = frozenset(germ_pair(cyc[i], cyc[(i + 1) % 6]) for i in range(6))
    antipodal = [i for i in range(6) if cyc[(i + 3) % 6] == neg(cyc[i])]
    if len(antipodal) == 6:
        # Saddle: all germ pairs are creases, normal on a body diagonal.
        diag = (0, 0, 0)
        for i in range(6):
            diag = add(diag, cross(cyc[i], cyc[(i + 1) % 6]))
        g = max(abs(c) for c in diag)
        diag = (diag[0] // g, diag[1] // g, diag[2] // g)
        if diag[0] < 0:
            diag = neg(diag)
        return VertexConfig(pairs, Tag.M, diagonal=diag, cycle=cyc)
    # Screw: exactly one antipodal germ pair, the axis.
    assert len(antipodal) == 2
    a_germ = cyc[antipodal[0]]
    if sum(a_germ) < 0:
        a_germ = neg(a_germ)
    i = cyc.index(a_germ)
    span_a = cyc[(i + 1) % 6]
    span_b = cyc[(i + 2) % 6]
    tag = Tag.S if span_b == cross(a_germ, span_a) else Tag.Z
    if tag is Tag.Z:
        assert span_b == neg(cross(a_germ, span_a))
    return VertexConfig(
        pairs, tag, axis=axis_of(a_germ), span_axis=axis_of(span_a), cycle=cyc
    )


def _build_cubic() -> tuple[VertexConfig, ...]:
    seen: dict[frozenset[GermPair], VertexConfig] = {}
    for combo in itertools.combinations(SLOT_PAIRS, 6):
        pairs = frozenset(combo)
        cyc = _cycle_of(pairs)
        if cyc is None:
            continue
        seen[pairs] = _classify_cycle(cyc)
    out = sorted(seen.values(), key=lambda c: sorted(c.pairs))
    return tuple(out)


def _build_flats() -> tuple[VertexConfig, ...]:
    out = []
    for n in AXES:
        p, q = n.others
        pairs = frozenset(
            germ_pair(unit(p, sp), unit(q, sq))
            for sp in (1, -1)
            for sq in (1, -1)
        )
        out.append(VertexConfig(pairs, Tag.FLAT, axis=n))
    return tuple(out)


CUBIC_CONFIGS: tuple[VertexConfig, ...] = _build_cubic()
FLAT_CONFIGS: tuple[VertexConfig, ...] = _build_flats()
EMPTY_CONFIG = VertexConfig(frozenset(), Tag.EMPTY)
MINIMAL_CONFIGS: tuple[VertexConfig, ...] = (
    CUBIC_CONFIGS + FLAT_CONFIGS + (EMPTY_CONFIG,)
)

CONFIG_BY_PAIRS: dict[frozenset[GermPair], VertexConfig] = {
    c.pairs: c for c in MINIMAL_CONFIGS
}

SCREW_CONFIGS: dict[tuple[Axis, Axis, Tag], VertexConfig] = {
    (c.axis, c.span_axis, c.tag): c
    for c in CUBIC_CONFIGS
    if c.tag in SCREW_TAGS
}

SADDLE_CONFIGS: dict[Vec3, VertexConfig] = {
    c.diagonal: c for c in CUBIC_CONFIGS if c.tag is Tag.M
}


def census_vertex_configs() -> dict[str, int]:
    """Count of the legal cubic vertex stars by tag."""
    out: dict[str, int] = {}
    for c in CUBIC_CONFIGS:
        out[c.tag.value] = out.get(c.tag.value, 0) + 1
    return out


def screw_config(axis: Axis, span_axis: Axis, tag: Tag) -> VertexConfig:
    return SCREW_CONFIGS[(axis, span_axis, tag)]


def saddle_config(diagonal: Vec3) -> VertexConfig:
    if diagonal[0] < 0:
        diagonal = neg(diagonal)
    return SADDLE_CONFIGS[diagonal]


def star_pairs(patch: FacePatch, v: Vec3) -> frozenset[GermPair]:
    return frozenset(
        germ_pair(*span_germs(f, v)) for f in patch.faces_at(v)
    )


def classify_vertex(patch: FacePatch, v: Vec3) -> Optional[VertexConfig]:
    """The configuration at v, or None if the star is not legal."""
    return CONFIG_BY_PAIRS.get(star_pairs(patch, v))


# ---------------------------------------------------------------------------
# Validation


@dataclass
class ValidationReport:
    mode: str
    edge_violations: list[tuple[Edge, int]]
    vertex_violations: list[Vec3]
    n_components: int
    tag_counts: dict[str, int]
    line_violations: list[tuple[Vec3, Axis]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        if self.edge_violations or self.vertex_violations:
            return False
        if self.line_violations:
            return False
        if self.mode == "cubic":
            return self.n_components == 1
        return self.n_components <= 1

    def summary(self) -> str:
        if self.ok:
            counts = ", ".join(
                f"{k}={v}" for k, v in sorted(self.tag_counts.items()) if v
            )
            return f"ok ({self.mode}): {counts or 'empty'}"
        bits = []
        if self.edge_violations:
            e, n = self.edge_violations[0]
            bits.append(
                f"{len(self.edge_violations)} bad edges"
                f" (first {e.origin} axis {e.axis.name} has {n} faces)"
            )
        if self.vertex_violations:
            bits.append(
                f"{len(self.vertex_violations)} illegal vertices"
                f" (first {self.vertex_violations[0]})"
            )
        if self.line_violations:
            v, a = self.line_violations[0]
            bits.append(
                f"{len(self.line_violations)} flat-line breaks"
                f" (first {v} along {a.name})"
            )
        if self.n_components > 1:
            bits.append(f"{self.n_components} components")
        return f"invalid ({self.mode}): " + "; ".join(bits)

    def lines(self) -> list[str]:
        """One machine-readable line per violation."""
        out = []
        for e, n in self.edge_violations:
            x, y, z = e.origin
            out.append(f"VIOLATION edge {x} {y} {z} {e.axis.name} faces={n}")
        for v in self.vertex_violations:
            out.append(f"VIOLATION vertex {v[0]} {v[1]} {v[2]}")
        for v, a in self.line_violations:
            out.append(f"VIOLATION flatline {v[0]} {v[1]} {v[2]} {a.name}")
        return out


def edge_face_counts(patch: FacePatch) -> dict[Edge, int]:
    counts: dict[Edge, int] = {}
    dom = patch.domain
    for f in patch.faces:
        for e in face_edges(f):
            w = dom.wrap_edge(e)
            counts[w] = counts.get(w, 0) + 1
    return counts


def validate(patch: FacePatch, mode: str = "cubic") -> ValidationReport:
    """Check the defining local conditions over the whole domain.

    mode "cubic": every lattice edge carries exactly two faces and
    every vertex star is one of the 16 cycle configurations.
    mode "minimal": edges carry zero or two faces and stars come from
    the 20 configurations including flat and empty vertices.
    """
    if mode not in ("cubic", "minimal"):
        raise ValueError(f"unknown mode {mode!r}")
    dom = patch.domain
    counts = edge_face_counts(patch)
    edge_bad = []
    for e in dom.check_edges():
        n = counts.get(dom.wrap_edge(e), 0)
        if mode == "cubic":
            if n != 2:
                edge_bad.append((e, n))
        else:
            if n not in (0, 2):
                edge_bad.append((e, n))
    vertex_bad = []
    tag_counts = {t.value: 0 for t in Tag}
    for v in dom.core_vertices():
        cfg = classify_vertex(patch, v)
        if cfg is None or (mode == "cubic" and cfg.tag not in (Tag.M, Tag.S, Tag.Z)):
            vertex_bad.append(v)
        else:
            tag_counts[cfg.tag.value] += 1
    line_bad: list[tuple[Vec3, Axis]] = []
    if mode == "minimal" and (
        tag_counts[Tag.FLAT.value] or tag_counts[Tag.EMPTY.value]
    ):
        line_bad = flat_line_violations(patch)
    return ValidationReport(
        mode=mode,
        edge_violations=edge_bad,
        vertex_violations=vertex_bad,
        n_components=len(connected_components(patch)),
        tag_counts=tag_counts,
        line_violations=line_bad,
    )


def validate_cubic(patch: FacePatch) -> ValidationReport:
    return validate(patch, "cubic")


def validate_discrete_minimal(patch: FacePatch) -> ValidationReport:
    return validate(patch, "minimal")


def _line_vertices(patch: FacePatch, v: Vec3, axis: Axis) -> Iterable[Vec3]:
    dom = patch.domain
    if isinstance(dom, Torus):
        cur = dom.wrap(v)
        start = cur
        while True:
            yield cur
            cur = dom.wrap(add(cur, unit(axis)))
            if cur == start:
                return
    else:
        core = set(dom.core_vertices())
        for k in range(dom.lo[axis], dom.hi[axis] + 1):
            w = list(v)
            w[axis] = k
            w = (w[0], w[1], w[2])
            if w in core:
                yield w


def _line_axes(cfg: VertexConfig) -> tuple[Axis, ...]:
    if cfg.tag is Tag.FLAT:
        return (cfg.axis,)
    if cfg.tag is Tag.EMPTY:
        return AXES
    return ()


def flat_line_violations(patch: FacePatch) -> list[tuple[Vec3, Axis]]:
    """Breaks of the flat-line property.

    Along the normal line of a flat vertex, and along every coordinate
    line through an empty vertex, each vertex must be empty or flat
    with the line direction as normal.  Returns (vertex, line axis)
    pairs for the offending vertices.
    """
    dom = patch.domain
    checked: set[tuple[Vec3, Axis]] = set()
    bad: list[tuple[Vec3, Axis]] = []
    for v in dom.core_vertices():
        cfg = classify_vertex(patch, v)
        if cfg is None:
            continue
        for axis in _line_axes(cfg):
            if (_norm(dom, v), axis) in checked:
                continue
            for w in _line_vertices(patch, v, axis):
                c2 = classify_vertex(patch, w)
                if c2 is not None and (
                    c2.tag is Tag.EMPTY
                    or (c2.tag is Tag.FLAT and c2.axis is axis)
                ):
                    checked.add((_norm(dom, w), axis))
                else:
                    bad.append((w, axis))
    return bad


def _norm(dom, v: Vec3) -> Vec3:
    return dom.wrap(v) if isinstance(dom, Torus) else v


def flat_line_holds(patch: FacePatch) -> bool:
    return not flat_line_violations(patch)
