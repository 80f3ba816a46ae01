"""Brute-force census of small tori and its cross checks."""

import json
from pathlib import Path

import pytest

from cubelat.lattice import Torus
from cubelat.local import (
    Tag,
    census_vertex_configs,
    classify_vertex,
    flat_line_holds,
    validate,
)
from cubelat.enumerator import EnumerationConfig, census, enumerate_patches
from cubelat.classify import classify, verify_certificate

GOLDEN = json.loads(
    (Path(__file__).parent / "data" / "golden_counts.json").read_text()
)


def small_cubic():
    return list(enumerate_patches(EnumerationConfig(Torus(2, 2, 2), "cubic")))


def test_vertex_config_census():
    assert census_vertex_configs() == {"M": 4, "S": 6, "Z": 6}


def test_small_torus_census_counts():
    rep = census(EnumerationConfig(Torus(2, 2, 2), "cubic"))
    assert rep.n_face_sets == GOLDEN["cubic"]["face_sets"]
    assert list(rep.class_sizes) == GOLDEN["cubic"]["class_sizes"]


def test_small_census_is_saddles_plus_screws():
    allm = allscrew = 0
    for p in small_cubic():
        tags = {classify_vertex(p, v).tag for v in p.domain.vertices()}
        if tags == {Tag.M}:
            allm += 1
        else:
            assert Tag.M not in tags
            allscrew += 1
    assert allm == GOLDEN["cubic"]["all_saddle"]
    assert allscrew == GOLDEN["cubic"]["all_screw"]


def test_every_census_patch_validates():
    for p in small_cubic():
        assert validate(p, "cubic").ok


def test_every_census_patch_classifies_exactly():
    for p in small_cubic():
        cert = classify(p)
        assert verify_certificate(cert, p)


def test_enumerated_sets_are_distinct():
    seen = {p.faces for p in small_cubic()}
    assert len(seen) == GOLDEN["cubic"]["face_sets"]


def test_minimal_mode_counts_and_flat_lines():
    cfg = EnumerationConfig(Torus(2, 2, 2), "minimal", connected_only=False)
    pats = list(enumerate_patches(cfg))
    assert len(pats) == GOLDEN["minimal"]["face_sets_with_empty"]
    nonempty = [p for p in pats if p.faces]
    assert len(nonempty) == GOLDEN["minimal"]["face_sets_nonempty"]
    for p in pats:
        rep = validate(p, "minimal")
        # the unfiltered census includes disconnected stacks of flat
        # planes; the local conditions still hold everywhere
        assert not rep.edge_violations and not rep.vertex_violations
        assert flat_line_holds(p)


def test_minimal_mode_contains_cubic_mode():
    cubic = {p.faces for p in small_cubic()}
    minimal = {
        p.faces
        for p in enumerate_patches(
            EnumerationConfig(Torus(2, 2, 2), "minimal", connected_only=False)
        )
    }
    assert cubic <= minimal


def test_bad_config_rejected():
    with pytest.raises(ValueError):
        EnumerationConfig(Torus(2, 2, 2), "fancy")
    with pytest.raises(ValueError):
        EnumerationConfig(Torus(2, 2, 1), "cubic")
