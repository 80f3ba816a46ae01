"""Mirror extension, congruence, pushes, slab surgery."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubelat.lattice import (
    Axis,
    FacePatch,
    PROPER_OPS,
    Torus,
    Window,
    op_vec,
)
from cubelat.local import Tag, classify_vertex, validate
from cubelat.generators import gen_p0, gen_p1, gen_p_sigma, gen_p_tau
from cubelat.transforms import (
    Lattice2,
    SlabSpec,
    Tower,
    cell_line_faces,
    congruent,
    detect_slabs,
    find_slabs,
    find_towers,
    insert_slab,
    insertable_specs,
    match_translation,
    op_patch,
    project_lattice,
    push_cells,
    push_tower,
    push_valid,
    reduce_by_congruence,
    reflect_extend,
    remove_slab,
    tower_cells,
)


# ------------------------------------------------------------ reflection

def test_reflect_p0_window_reproduces_torus():
    seed = gen_p0(Window((0, 0, 0), (2, 2, 2)))
    ext = reflect_extend(seed, Torus(2, 2, 2))
    assert ext.faces == gen_p0(Torus(2, 2, 2)).faces


def test_reflect_rejects_thin_seed_and_bad_periods():
    thin = FacePatch.make(Window((0, 0, 0), (1, 2, 2)), [])
    with pytest.raises(ValueError):
        reflect_extend(thin, Torus(2, 2, 2))
    seed = gen_p0(Window((0, 0, 0), (2, 2, 2)))
    with pytest.raises(ValueError):
        reflect_extend(seed, Torus(2, 2, 3))


def test_reflect_grows_window():
    seed = gen_p0(Window((0, 0, 0), (2, 2, 2)))
    big = reflect_extend(seed, Window((-2, -2, -2), (4, 4, 4)))
    assert big.faces == gen_p0(Window((-2, -2, -2), (4, 4, 4))).faces


# ------------------------------------------------------------ congruence

def test_op_patch_keeps_validity():
    p1 = gen_p1(Torus(2, 2, 2))
    for op in PROPER_OPS[:8]:
        assert validate(op_patch(op, p1), "cubic").ok


def test_congruent_basics():
    dom = Torus(2, 2, 2)
    p0, p1 = gen_p0(dom), gen_p1(dom)
    assert congruent(p0, p1) is None
    assert congruent(p0, p0) is not None
    assert congruent(p0, p0.translate((1, 1, 1))) is not None
    # a rotated copy matches
    op = ((0, 0, 1), (1, 0, 0), (0, 1, 0))
    assert congruent(op_patch(op, p1), p1) is not None


def test_match_translation():
    p0 = gen_p0(Torus(2, 2, 2))
    t = match_translation(p0, p0.translate((1, 1, 1)))
    assert t is not None
    assert p0.translate(t).faces == p0.translate((1, 1, 1)).faces
    assert match_translation(p0, gen_p1(Torus(2, 2, 2))) is None


def test_reduce_by_congruence_groups():
    dom = Torus(2, 2, 2)
    p0, p1 = gen_p0(dom), gen_p1(dom)
    ps = gen_p_sigma("SS", dom)
    groups = reduce_by_congruence([p0, p1, p0.translate((1, 0, 0)), ps])
    sizes = sorted(len(g) for g in groups)
    assert sizes == [1, 1, 2]


# ------------------------------------------------------------ pushes

def test_p0_towers_on_odd_checkerboard():
    p0 = gen_p0(Torus(2, 2, 2))
    for axis in Axis:
        assert sorted(tower_cells(p0, axis)) == [(0, 1), (1, 0)]


def test_push_p0_gives_p1_class():
    dom = Torus(2, 2, 2)
    p0, p1 = gen_p0(dom), gen_p1(dom)
    pushed = push_valid(p0, Axis.Z, [(0, 1)])
    assert pushed is not None and validate(pushed, "cubic").ok
    assert congruent(pushed, p1) is not None
    # pushing the complementary tower too lands back in the saddle class
    both = push_valid(p0, Axis.Z, [(0, 1), (1, 0)])
    assert both is not None
    assert congruent(both, p0) is not None


def test_push_is_involution_and_order_free():
    p0 = gen_p0(Torus(4, 4, 2))
    once = push_cells(p0, Axis.Z, [(0, 1)])
    assert push_cells(once, Axis.Z, [(0, 1)]).faces == p0.faces
    ab = push_cells(p0, Axis.Z, [(0, 1), (1, 2)])
    ba = push_cells(push_cells(p0, Axis.Z, [(1, 2)]), Axis.Z, [(0, 1)])
    assert ab.faces == ba.faces


def test_push_wraps_sheared_orbits():
    dom = Torus.from_rows([(2, 0, 0), (0, 2, 0), (1, 1, 1)])
    lat = project_lattice(dom, Axis.Z)
    assert (lat.a, lat.c) == (2, 1)
    # the z-line through one cell covers the diagonal orbit of two cells
    faces = cell_line_faces(dom, Axis.Z, (0, 0))
    assert len(faces) == 8
    p0 = gen_p0(dom)
    pushed = push_valid(p0, Axis.Z, [(0, 0)])
    assert pushed is not None and validate(pushed, "cubic").ok


def test_sigma_patch_has_no_horizontal_towers():
    # the screw columns leave only vertical lines pushable, on the
    # checkerboard opposite to the one p0 exposes
    p1 = gen_p1(Torus(2, 2, 2))
    assert tower_cells(p1, Axis.X) == []
    assert tower_cells(p1, Axis.Y) == []
    assert sorted(tower_cells(p1, Axis.Z)) == [(0, 0), (1, 1)]


# ------------------------------------------------------------ slabs

def test_detect_slabs_on_tau():
    p = gen_p_tau("0x", Torus(2, 2, 4))
    slabs = detect_slabs(p)
    z_slabs = [s for s in slabs if s.normal is Axis.Z]
    assert [(s.level, s.screw_axis) for s in z_slabs] == [(1, Axis.X), (3, Axis.X)]


def test_detect_slabs_on_sigma():
    p = gen_p_sigma("SZ", Torus(2, 2, 2))
    slabs = detect_slabs(p)
    assert all(s.screw_axis is Axis.Z for s in slabs)
    assert {s.normal for s in slabs} == {Axis.X, Axis.Y}
    assert len(slabs) == 4


def test_detect_no_slabs_on_p0():
    assert detect_slabs(gen_p0(Torus(2, 2, 2))) == []


def test_remove_insert_roundtrip():
    p = gen_p_tau("0x", Torus(2, 2, 4))
    for level in (1, 3):
        removed, spec = remove_slab(p, level)
        assert validate(removed, "cubic").ok
        assert removed.domain.pz == 3
        back = insert_slab(removed, spec)
        shifted = p.translate((0, 0, -(level + 1)))
        assert back.domain == p.domain
        assert back.faces == shifted.faces


def test_remove_slab_shears_vertical_row():
    p = gen_p_tau("0x", Torus(2, 2, 4))
    removed, spec = remove_slab(p, 3)
    assert spec.screw_axis is Axis.X
    assert removed.domain == Torus(2, 2, 3, zy=1)


def test_remove_slab_requires_slab():
    with pytest.raises(ValueError):
        remove_slab(gen_p0(Torus(2, 2, 4)), 1)


def test_slab_spec_word_forms():
    p = gen_p_tau("0x", Torus(2, 2, 4))
    _, spec = remove_slab(p, 3)
    assert spec.trivial
    assert spec.omega() in ("u", "p")


def test_remove_reoriented_sigma_slab():
    # rotate a column surface so its x-normal slabs face up, then peel one
    p = gen_p_sigma("SZ", Torus(2, 2, 2))
    op = ((0, 0, -1), (0, 1, 0), (1, 0, 0))  # x -> z, z -> -x
    q = op_patch(op, p)
    slabs = [s for s in detect_slabs(q) if s.normal is Axis.Z]
    assert slabs and all(s.screw_axis is Axis.X for s in slabs)
    removed, spec = remove_slab(q, slabs[-1].level)
    assert validate(removed, "cubic").ok
    back = insert_slab(removed, spec)
    shifted = q.translate((0, 0, -(slabs[-1].level + 1)))
    assert back.faces == shifted.faces


# ------------------------------------------------------------ lattice2

def test_lattice2_wrap():
    lat = Lattice2.from_vectors([(2, 0), (0, 2), (1, 1)])
    assert (lat.a, lat.c) == (2, 1)
    assert lat.wrap((1, 1)) == (0, 0)
    assert lat.wrap((1, 0)) == (1, 0)


@settings(deadline=None, max_examples=20)
@given(
    axis=st.sampled_from(list(Axis)),
    cells=st.lists(
        st.tuples(st.integers(0, 3), st.integers(0, 3)),
        min_size=1, max_size=3,
    ),
)
def test_push_cells_involution_random(axis, cells):
    p0 = gen_p0(Torus(4, 4, 4))
    once = push_cells(p0, axis, cells)
    again = push_cells(once, axis, cells)
    assert again.faces == p0.faces


# ------------------------------------------------------------ towers

def test_find_towers_on_p0_are_saddle_class():
    p0 = gen_p0(Torus(4, 4, 4))
    towers = find_towers(p0)
    assert len(towers) == 24
    assert all(t.diagram_class == 1 for t in towers)
    assert all(t.dots == ("o", "o", "o", "o") for t in towers)


def test_push_tower_flips_diagram_class():
    p0 = gen_p0(Torus(4, 4, 4))
    tower = find_towers(p0, Axis.Z)[0]
    pushed = push_tower(p0, tower)
    assert validate(pushed).ok
    (after,) = [t for t in find_towers(pushed, Axis.Z)
                if t.base == tower.base]
    assert after.diagram_class == 6
    assert push_tower(pushed, after).faces == p0.faces


def test_push_tower_rejects_non_tower():
    p0 = gen_p0(Torus(4, 4, 4))
    tower = find_towers(p0, Axis.Z)[0]
    blocked = Tower(tower.axis, (tower.base[0] + 1, tower.base[1]),
                    tower.dots, None)
    with pytest.raises(ValueError):
        push_tower(p0, blocked)


def test_twisted_column_patch_has_no_towers():
    twisted = gen_p_sigma("SSZZ", Torus(4, 4, 4))
    assert find_towers(twisted) == []


# ------------------------------------------------- seam patterns

def test_insertable_specs_on_p0():
    p0 = gen_p0(Torus(4, 4, 4))
    specs = insertable_specs(p0)
    assert len(specs) == 2
    assert {s.screw_axis for s in specs} == {Axis.X, Axis.Y}
    assert all(s.trivial for s in specs)
    # the hand row is forced once axis and span are chosen
    assert len({(s.screw_axis, s.span0) for s in specs}) == 2


def test_vertical_screw_column_blocks_insertion():
    p0 = gen_p0(Torus(4, 4, 4))
    pushed = push_valid(p0, Axis.Z, [(0, 1)])
    assert insertable_specs(pushed) == []


def test_insertable_specs_regrow_valid_slabs():
    p0 = gen_p0(Torus(4, 4, 4))
    for spec in insertable_specs(p0):
        grown = insert_slab(p0, spec)
        assert validate(grown).ok
        assert detect_slabs(grown)
        assert find_slabs(grown) == detect_slabs(grown)
