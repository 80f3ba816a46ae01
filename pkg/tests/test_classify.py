"""Certificates: classification, rebuild, exactness."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubelat.lattice import Axis, FacePatch, Torus, Window
from cubelat.words import canon_sigma, canon_tau
from cubelat.generators import gen_p0, gen_p1, gen_p_sigma, gen_p_tau
from cubelat.local import validate
from cubelat.transforms import congruent, push_valid, tower_cells
from cubelat.classify import (
    ApplyOp,
    Certificate,
    Push,
    Translate,
    UnclassifiableError,
    apply_step,
    classify,
    classify_all_screw,
    eliminate_vertical_columns,
    rebuild,
    tower_parity,
    verify_certificate,
)


def classified_exactly(patch: FacePatch) -> Certificate:
    cert = classify(patch)
    assert verify_certificate(cert, patch)
    return cert


# ------------------------------------------------------------ generators

def test_p0_is_the_empty_tau_certificate():
    patch = gen_p0(Torus(4, 4, 2))
    cert = classified_exactly(patch)
    assert cert.kind == "tau"
    assert cert.word == "00"
    assert cert.steps == ()
    assert cert.summary() == "pushed tau 00"


def test_p1_classifies_and_rebuilds():
    patch = gen_p1(Torus(2, 2, 2))
    classified_exactly(patch)


@pytest.mark.parametrize("word", ["0x0x", "0y0y", "0x0x0x"])
def test_tau_words_recovered_canonically(word):
    need = (word.count("x") % 2, word.count("y") % 2)
    dom = Torus(4, 4, len(word), yx=0, zx=need[0], zy=need[1])
    cert = classified_exactly(gen_p_tau(word, dom))
    assert cert.kind == "tau"
    assert canon_tau(cert.word) == canon_tau(word)
    assert cert.steps == ()


@pytest.mark.parametrize("word,dom", [
    ("SZ", Torus(4, 4, 2)),
    ("SSZZ", Torus(4, 4, 4)),
    ("SS", Torus(2, 2, 2)),
    ("SZ", Torus(2, 2, 2, yx=0, zx=1, zy=1)),
])
def test_sigma_words_recovered_canonically(word, dom):
    patch = gen_p_sigma(word, dom)
    cert = classified_exactly(patch)
    assert cert.kind == "sigma"
    reps = dom.pz // len(word)
    assert canon_sigma(cert.word) == canon_sigma(word * reps)
    assert cert.summary() == f"allscrew sigma {cert.word}"


def test_letter_stack_stays_a_tau_word():
    # a screw wall stack reads as a letter word in its own frame
    cert = classified_exactly(gen_p_tau("xx", Torus(4, 4, 2)))
    assert (cert.kind, cert.word) == ("tau", "xx")
    assert cert.summary() == "allscrew tau xx"


# ------------------------------------------------------------ pushes

def test_single_push_certificate_is_minimal():
    base = gen_p_sigma("SZ", Torus(4, 4, 2))
    pushed = push_valid(base, Axis.Z, [(0, 0)])
    cert = classified_exactly(pushed)
    assert cert.kind == "sigma"
    assert len(cert.steps) == 1
    assert isinstance(cert.steps[0], Push)
    assert cert.summary() == "pushed sigma SZ push z 0 0"


def test_pushed_p0_classifies_exactly():
    base = gen_p0(Torus(4, 4, 2))
    pushed = push_valid(base, Axis.X, [(0, 1)])
    classified_exactly(pushed)


def test_push_straddling_a_wall_classifies():
    # a sideways push across a screw wall slides strips of it one
    # level up, leaving a staircase that must be reassembled
    base = gen_p_tau("0x0x", Torus(4, 4, 4))
    for cells in ([(0, 1)], [(0, 1), (2, 3)], [(1, 0)]):
        pushed = push_valid(base, Axis.X, cells)
        assert pushed is not None
        classified_exactly(pushed)


def test_double_staircase_classifies():
    base = gen_p_tau("0x0x", Torus(4, 4, 4))
    w = push_valid(base, Axis.X, [(1, 0)])
    w = push_valid(w, Axis.X, [(0, 1)])
    assert w is not None
    classified_exactly(w)


def test_stacked_pushes_classify():
    w = gen_p0(Torus(4, 4, 2))
    w = push_valid(w, Axis.Z, [(0, 1)])
    w = push_valid(w, Axis.X, [(3, 0)])
    assert w is not None
    classified_exactly(w)


def test_seam_staircase_classifies():
    base = gen_p_tau("0x0x", Torus(4, 4, 4)).translate((0, 0, -2))
    pushed = push_valid(base, Axis.X, [(0, 3)])
    assert pushed is not None
    classified_exactly(pushed)


def test_doubly_pushed_sigma_restores():
    base = gen_p_sigma("SZ", Torus(4, 4, 2))
    w = push_valid(base, Axis.Z, [(3, 1)])
    w = push_valid(w, Axis.Z, [(2, 0)])
    assert w is not None
    cert = classified_exactly(w)
    assert cert.kind == "sigma"


# ------------------------------------------------------------ steps

def test_apply_step_translate_and_op():
    patch = gen_p0(Torus(4, 4, 2))
    t = apply_step(patch, Translate((1, 2, 1)))
    assert apply_step(t, Translate((-1, -2, -1))).faces == patch.faces
    op = ((0, 0, -1), (0, 1, 0), (1, 0, 0))
    inv = ((0, 0, 1), (0, 1, 0), (-1, 0, 0))
    assert apply_step(apply_step(patch, ApplyOp(op)), ApplyOp(inv)).faces == patch.faces


def test_apply_step_push_is_involutive():
    patch = gen_p0(Torus(4, 4, 2))
    cell = sorted(tower_cells(patch, Axis.Z))[0]
    step = Push(Axis.Z, (cell,))
    assert apply_step(apply_step(patch, step), step).faces == patch.faces


def test_rebuild_rejects_unknown_kind():
    with pytest.raises(ValueError):
        rebuild(Certificate("spiral", "SZ", Torus(4, 4, 2)))


def test_verify_is_exact_not_congruent():
    p0 = gen_p0(Torus(2, 2, 2))
    cert = classify(p0)
    assert verify_certificate(cert, p0)
    assert not verify_certificate(cert, gen_p1(Torus(2, 2, 2)))


# ------------------------------------------------------------ errors

def test_window_patches_are_rejected():
    patch = gen_p0(Window((0, 0, 0), (2, 2, 2)))
    with pytest.raises(ValueError):
        classify(patch)


def test_invalid_patch_is_rejected():
    dom = Torus(2, 2, 2)
    broken = FacePatch.make(dom, list(gen_p0(dom).faces)[:-1])
    with pytest.raises(ValueError):
        classify(broken)


# ------------------------------------------------------------ property

@settings(max_examples=20, deadline=None)
@given(st.data())
def test_random_push_sequences_classify_exactly(data):
    patch = gen_p0(Torus(4, 4, data.draw(st.sampled_from([2, 4]))))
    for _ in range(data.draw(st.integers(1, 3))):
        axis = data.draw(st.sampled_from([Axis.X, Axis.Y, Axis.Z]))
        cells = sorted(tower_cells(patch, axis))
        if not cells:
            continue
        cell = data.draw(st.sampled_from(cells))
        pushed = push_valid(patch, axis, [cell])
        if pushed is not None:
            patch = pushed
    classified_exactly(patch)


# ------------------------------------------------ convenience wrappers

def test_classify_all_screw_rejects_saddles():
    p0 = gen_p0(Torus(2, 2, 2))
    with pytest.raises(ValueError):
        classify_all_screw(p0)


def test_classify_all_screw_on_column_surfaces():
    cert = classify_all_screw(gen_p_sigma("SSZZ", Torus(4, 4, 4)))
    assert cert.kind == "sigma"
    # standing wall stacks read as a wall word instead
    cert2 = classify_all_screw(gen_p_tau("x", Torus(2, 2, 2)))
    assert cert2.kind == "tau" and cert2.canonical_word == "xx"


def test_tower_parity_flips_under_push():
    p0 = gen_p0(Torus(4, 4, 4))
    before = tower_parity(p0)
    assert set(before.values()) == {0}
    base = next(iter(before))
    pushed = push_valid(p0, Axis.Z, [base])
    after = tower_parity(pushed)
    assert after[base] == 1
    assert all(v == 0 for c, v in after.items() if c != base)


def test_eliminate_vertical_columns():
    p0 = gen_p0(Torus(4, 4, 4))
    assert eliminate_vertical_columns(p0) is None
    pushed = push_valid(p0, Axis.Z, [(0, 1), (2, 3)])
    found = eliminate_vertical_columns(pushed)
    assert found is not None
    cells, cleared = found
    assert validate(cleared).ok
    assert congruent(cleared, p0) is not None or cleared.faces == p0.faces
