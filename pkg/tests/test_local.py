"""Vertex star census and classification against independent oracles."""

import itertools

from hypothesis import given, strategies as st

from cubelat.lattice import (
    Axis,
    DIRS,
    Face,
    FacePatch,
    Torus,
    Window,
    neg,
)
from cubelat.local import (
    CONFIG_BY_PAIRS,
    CUBIC_CONFIGS,
    FLAT_CONFIGS,
    MINIMAL_CONFIGS,
    SLOT_PAIRS,
    Tag,
    VertexConfig,
    classify_vertex,
    germ_pair,
    saddle_config,
    screw_config,
    star_pairs,
    validate,
)


def oracle_hamiltonian_stars():
    """All 6-cycles on the germ octahedron, enumerated by permutation.

    Independent of the production table, which filters 6-subsets of the
    twelve germ pairs instead.
    """
    out = set()
    for perm in itertools.permutations(DIRS):
        if any(perm[(i + 1) % 6] == neg(perm[i]) for i in range(6)):
            continue
        out.add(
            frozenset(germ_pair(perm[i], perm[(i + 1) % 6]) for i in range(6))
        )
    return out


def test_census_matches_permutation_oracle():
    oracle = oracle_hamiltonian_stars()
    assert len(oracle) == 16
    assert oracle == {c.pairs for c in CUBIC_CONFIGS}


def test_tag_counts():
    tags = [c.tag for c in CUBIC_CONFIGS]
    assert tags.count(Tag.M) == 4
    assert tags.count(Tag.S) == 6
    assert tags.count(Tag.Z) == 6
    assert len(MINIMAL_CONFIGS) == 20
    assert len(FLAT_CONFIGS) == 3


def test_saddle_diagonals():
    diags = {c.diagonal for c in CUBIC_CONFIGS if c.tag is Tag.M}
    assert diags == {(1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1)}
    for d in diags:
        assert saddle_config(d).diagonal == d
        assert saddle_config(neg(d)).diagonal == d


def test_screw_parameters_cover():
    keys = {
        (c.axis, c.span_axis, c.tag)
        for c in CUBIC_CONFIGS
        if c.tag in (Tag.S, Tag.Z)
    }
    assert len(keys) == 12
    for a in (Axis.X, Axis.Y, Axis.Z):
        for s in a.others:
            for t in (Tag.S, Tag.Z):
                assert (a, s, t) in keys


def test_screw_faces_frozen():
    # Frozen handedness convention: for axis z and span x, the S screw
    # pairs the upper walls with +z/+x and the quarter turn lands on +y.
    cfg = screw_config(Axis.Z, Axis.X, Tag.S)
    assert cfg.faces_at((0, 0, 0)) == frozenset(
        {
            Face((0, 0, 0), Axis.Y),
            Face((-1, 0, 0), Axis.Y),
            Face((0, 0, 0), Axis.Z),
            Face((-1, -1, 0), Axis.Z),
            Face((0, 0, -1), Axis.X),
            Face((0, -1, -1), Axis.X),
        }
    )
    cfg_z = screw_config(Axis.Z, Axis.X, Tag.Z)
    assert cfg_z.faces_at((0, 0, 0)) == frozenset(
        {
            Face((0, 0, 0), Axis.Y),
            Face((-1, 0, 0), Axis.Y),
            Face((0, -1, 0), Axis.Z),
            Face((-1, 0, 0), Axis.Z),
            Face((0, 0, -1), Axis.X),
            Face((0, -1, -1), Axis.X),
        }
    )


def test_classify_roundtrip_all_configs():
    w = Window((0, 0, 0), (4, 4, 4))
    v = (2, 2, 2)
    for cfg in MINIMAL_CONFIGS:
        patch = FacePatch.make(w, cfg.faces_at(v))
        assert classify_vertex(patch, v) == cfg


def _oracle_legal(pairs):
    """Star legality straight from the definitions."""
    if not pairs:
        return True
    deg = {d: 0 for d in DIRS}
    for a, b in pairs:
        deg[a] += 1
        deg[b] += 1
    germs = [d for d in DIRS if deg[d]]
    if any(deg[d] != 2 for d in germs):
        return False
    # walk one cycle from any used germ
    nbrs = {d: [] for d in DIRS}
    for a, b in pairs:
        nbrs[a].append(b)
        nbrs[b].append(a)
    start = germs[0]
    prev, cur, count = None, start, 0
    while True:
        a, b = nbrs[cur]
        prev, cur = cur, (b if a == prev else a)
        count += 1
        if cur == start:
            break
    if count != len(germs):
        return False
    if len(germs) == 6:
        return True
    if len(germs) == 4:
        # flat disk: the two unused germs must be an antipodal pair
        unused = [d for d in DIRS if deg[d] == 0]
        return unused[0] == neg(unused[1])
    return False


@given(st.lists(st.sampled_from(range(12)), unique=True, max_size=12))
def test_classify_matches_definition_oracle(slots):
    pairs = frozenset(SLOT_PAIRS[i] for i in slots)
    legal = _oracle_legal(pairs)
    cfg = CONFIG_BY_PAIRS.get(pairs)
    assert (cfg is not None) == legal
    if cfg is not None:
        w = Window((0, 0, 0), (4, 4, 4))
        patch = FacePatch.make(w, cfg.faces_at((2, 2, 2)))
        assert star_pairs(patch, (2, 2, 2)) == pairs


def test_validate_rejects_full_skeleton():
    t = Torus(2, 2, 2)
    patch = FacePatch.make(t, t.all_faces())
    rep = validate(patch, "cubic")
    assert not rep.ok
    assert rep.edge_violations


def test_validate_empty_patch():
    t = Torus(2, 2, 2)
    patch = FacePatch.make(t, [])
    assert not validate(patch, "cubic").ok
    assert validate(patch, "minimal").ok
