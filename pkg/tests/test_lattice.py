"""Geometry primitives: incidence orders, wrapping, HNF domains."""

import itertools

import pytest
from hypothesis import given, strategies as st

from cubelat.lattice import (
    ALL_OPS,
    AXES,
    Axis,
    Edge,
    Face,
    FacePatch,
    PROPER_OPS,
    Torus,
    Window,
    add,
    connected_components,
    face_edges,
    face_from_span,
    faces_of_edge,
    faces_of_vertex,
    is_connected,
    op_compose,
    op_det,
    op_edge,
    op_face,
    op_inverse,
    op_vec,
    smul,
    span_germs,
    unit,
)

vecs = st.tuples(
    st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20)
)


@st.composite
def tori(draw):
    px = draw(st.integers(1, 5))
    py = draw(st.integers(1, 5))
    pz = draw(st.integers(1, 5))
    return Torus(
        px,
        py,
        pz,
        yx=draw(st.integers(0, px - 1)),
        zx=draw(st.integers(0, px - 1)),
        zy=draw(st.integers(0, py - 1)),
    )


def test_faces_of_edge_frozen_order():
    # Deterministic incidence order: partner axes ascending, offset 0
    # before offset -1.
    e = Edge((0, 0, 0), Axis.X)
    assert faces_of_edge(e) == (
        Face((0, 0, 0), Axis.Z),
        Face((0, -1, 0), Axis.Z),
        Face((0, 0, 0), Axis.Y),
        Face((0, 0, -1), Axis.Y),
    )


@given(vecs)
def test_faces_of_vertex_incidence(v):
    faces = faces_of_vertex(v)
    assert len(faces) == len(set(faces)) == 12
    for f in faces:
        d1, d2 = span_germs(f, v)
        assert face_from_span(v, d1, d2) == f


@given(vecs, st.sampled_from(range(6)))
def test_faces_of_edge_contain_edge(v, k):
    a = Axis(k % 3)
    e = Edge(v, a)
    faces = faces_of_edge(e)
    assert len(set(faces)) == 4
    for f in faces:
        assert e in face_edges(f)


@given(tori(), vecs)
def test_wrap_idempotent_and_boxed(t, v):
    w = t.wrap(v)
    assert t.wrap(w) == w
    assert 0 <= w[0] < t.px and 0 <= w[1] < t.py and 0 <= w[2] < t.pz


@given(tori(), vecs, st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)))
def test_wrap_lattice_invariant(t, v, coeffs):
    shift = (0, 0, 0)
    for c, row in zip(coeffs, t.rows):
        shift = add(shift, smul(c, row))
    assert t.wrap(add(v, shift)) == t.wrap(v)


@given(tori(), st.sampled_from(ALL_OPS))
def test_hnf_canonicalization_preserves_lattice(t, op):
    t2 = Torus.from_rows(op_vec(op, r) for r in t.rows)
    assert t2.volume == t.volume
    # Image of each generator lies in the canonicalized lattice and
    # vice versa, so the two lattices coincide.
    inv = op_inverse(op)
    for r in t.rows:
        assert t2.contains_vector(op_vec(op, r))
    for r in t2.rows:
        assert t.contains_vector(op_vec(inv, r))


def test_ops_group():
    assert len(ALL_OPS) == 48
    assert len(PROPER_OPS) == 24
    assert all(op_det(op) in (1, -1) for op in ALL_OPS)
    for op in ALL_OPS[:8]:
        assert op_compose(op, op_inverse(op)) == (
            (1, 0, 0),
            (0, 1, 0),
            (0, 0, 1),
        )


@given(st.sampled_from(ALL_OPS), vecs)
def test_op_face_consistent_with_vertices(op, v):
    for f in faces_of_vertex(v):
        g = op_face(op, f)
        img = {op_vec(op, c) for c in _face_corners(f)}
        assert img == set(_face_corners(g))


def _face_corners(f):
    p, q = f.spans
    c = f.corner
    return (
        c,
        add(c, unit(p)),
        add(c, unit(q)),
        add(add(c, unit(p)), unit(q)),
    )


@given(st.sampled_from(ALL_OPS), vecs, st.sampled_from(list(AXES)))
def test_op_edge_consistent_with_vertices(op, v, a):
    e = Edge(v, a)
    g = op_edge(op, e)
    assert {op_vec(op, p) for p in e.endpoints()} == set(g.endpoints())


def test_full_skeleton_edge_degree_four():
    t = Torus(2, 2, 2)
    patch = FacePatch.make(t, t.all_faces())
    for e in t.all_edges():
        assert len(patch.edge_faces(e)) == 4


def test_connected_components():
    t = Torus(2, 2, 2)
    skel = FacePatch.make(t, t.all_faces())
    assert is_connected(skel)
    w = Window((0, 0, 0), (2, 2, 2))
    sheets = [
        Face((x, y, z), Axis.Z)
        for x in range(2)
        for y in range(2)
        for z in (0, 2)
    ]
    patch = FacePatch.make(w, sheets)
    assert len(connected_components(patch)) == 2


def test_window_containment():
    w = Window((0, 0, 0), (2, 2, 2))
    assert w.contains_face(Face((1, 1, 2), Axis.Z))
    assert not w.contains_face(Face((2, 1, 1), Axis.Z))
    assert not w.contains_face(Face((1, 1, -1), Axis.X))
    assert len(list(w.core_vertices())) == 1
    with pytest.raises(ValueError):
        FacePatch.make(w, [Face((2, 2, 2), Axis.X)])


def test_torus_requires_canonical_shears():
    with pytest.raises(ValueError):
        Torus(2, 2, 2, yx=2)
    with pytest.raises(ValueError):
        Torus(0, 2, 2)
    t = Torus.from_rows([(0, 0, 2), (2, 0, 0), (1, 2, 0)])
    assert (t.px, t.py, t.pz, t.yx, t.zx, t.zy) == (2, 2, 2, 1, 0, 0)
