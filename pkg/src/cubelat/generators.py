"""Constructors for the classical families of cubic polyhedra.

All generators are closed-form predicates over candidate faces, so the
same formulas serve tori and windows.

Layered family: a stack of unit layers [l, l+1], each carrying wall
phases (p, q): Y-normal walls at corners x = p mod 2 (all y) and
X-normal walls at corners y = q mod 2 (all x).  The horizontal faces at
a vertex plane are forced by the phase step across it:

  step (1,1): saddle plane, checkerboard cells  x + y = p + q + 1
  step (0,1): x-axis screw plane, cell stripes  x = p + 1
  step (1,0): y-axis screw plane, cell stripes  y = q + 1

and a step (0,0) admits no legal completion.  A tau word lists the
steps, so the stack is reconstructed from one seed phase.
"""

from __future__ import annotations

from typing import Optional

from cubelat.lattice import (
    AXES,
    Axis,
    Domain,
    Face,
    FacePatch,
    Torus,
    Vec3,
    Window,
    add,
    faces_of_vertex,
    neg,
    op_face,
    unit,
)
from cubelat.local import (
    CONFIG_BY_PAIRS,
    MINIMAL_CONFIGS,
    Tag,
    VertexConfig,
    germ_pair,
    screw_config,
    star_pairs,
)
from cubelat.words import (
    SIGMA_ALPHABET,
    TAU_ALPHABET,
    check_word,
    column_period,
    min_cyclic_period,
)

TAU_STEP = {"0": (1, 1), "x": (0, 1), "y": (1, 0)}


def _from_predicate(domain: Domain, keep) -> FacePatch:
    return FacePatch.make(domain, (f for f in domain.all_faces() if keep(f)))


# ---------------------------------------------------------------------------
# Saddle surface P0


def _p0_keeps(f: Face) -> bool:
    x, y, z = f.corner
    if f.normal is Axis.Z:
        return (x + y) % 2 == 1
    if f.normal is Axis.X:
        return (y + z) % 2 == 1
    return (x + z) % 2 == 1


def gen_p0(domain: Domain) -> FacePatch:
    """The all-saddle surface: per normal, the odd checkerboard class."""
    if isinstance(domain, Torus):
        for r in domain.rows:
            if len({c % 2 for c in r}) != 1:
                raise ValueError(
                    f"period {r} breaks the checkerboard: components"
                    " must be all even or all odd"
                )
    return _from_predicate(domain, _p0_keeps)


# ---------------------------------------------------------------------------
# Parallel-column surfaces P_sigma


def _hand(sigma: str, x: int, y: int, z: int) -> Tag:
    base = sigma[z % len(sigma)]
    flip = (x + y) % 2 == 1
    if base == "S":
        return Tag.Z if flip else Tag.S
    return Tag.S if flip else Tag.Z


def _span(z: int) -> Axis:
    return Axis.X if z % 2 == 0 else Axis.Y


def gen_p_sigma(sigma: str, domain: Domain) -> FacePatch:
    """All vertices are vertical screws; sigma gives the handedness per
    level at the origin column, flipping on the horizontal checkerboard.
    The transverse span axis is x on even levels and y on odd ones.

    Torus domains need even horizontal checkerboard shifts and an even
    height that the word tiles; vertical shears are free (the infinite
    column word flips handedness across a parity-odd seam).
    """
    check_word(sigma, SIGMA_ALPHABET)
    if isinstance(domain, Torus):
        if domain.px % 2 or (domain.yx + domain.py) % 2:
            raise ValueError(
                "column surfaces need horizontal periods preserving"
                " the (x + y) checkerboard"
            )
        if domain.pz % 2 or domain.pz % len(sigma):
            raise ValueError(
                f"height {domain.pz} is not an even multiple"
                f" of the word {sigma!r}"
            )

    def keep(f: Face) -> bool:
        x, y, z = f.corner
        s = _span(z)
        if f.normal is Axis.Y:
            return s is Axis.X
        if f.normal is Axis.X:
            return s is Axis.Y
        want = Tag.S if s is Axis.X else Tag.Z
        return _hand(sigma, x, y, z) is want

    return _from_predicate(domain, keep)


def gen_p1(domain: Domain) -> FacePatch:
    """The twisted column surface, column word SZ."""
    return gen_p_sigma("SZ", domain)


def gen_column(sigma: str, levels: int) -> FacePatch:
    """A single free-standing screw column on a window.

    The column of vertices sits at x = y = 1; the window leaves one
    cell of margin so every star fits.
    """
    check_word(sigma, SIGMA_ALPHABET)
    if levels < 1:
        raise ValueError("need at least one level")
    w = Window((-1, -1, -1), (3, 3, levels + 1))
    faces = set()
    for k in range(levels + 1):
        cfg = screw_config(Axis.Z, _span(k), _hand(sigma, 1, 1, k))
        faces |= cfg.faces_at((1, 1, k))
    return FacePatch.make(w, faces)


# ---------------------------------------------------------------------------
# Layered surfaces P_tau


def _tau_phases(tau: str, z_lo: int, z_hi: int, phase0: tuple[int, int]):
    """Wall phases for layers z_lo..z_hi-1, seeded at layer z_lo."""
    n = len(tau)
    phases = {z_lo: (phase0[0] % 2, phase0[1] % 2)}
    for layer in range(z_lo + 1, z_hi):
        dp, dq = TAU_STEP[tau[layer % n]]
        p, q = phases[layer - 1]
        phases[layer] = ((p + dp) % 2, (q + dq) % 2)
    return phases


def gen_p_tau(
    tau: str,
    domain: Domain,
    phase0: tuple[int, int] = (1, 1),
) -> FacePatch:
    """Layered surface described by a tau word, one letter per vertex
    plane.  The all-0 word with the default seed phase reproduces
    gen_p0 exactly.
    """
    check_word(tau, TAU_ALPHABET)
    n = len(tau)
    if isinstance(domain, Torus):
        if domain.px % 2 or domain.py % 2 or domain.yx % 2:
            raise ValueError("layered surfaces need even horizontal periods")
        if domain.pz % n:
            raise ValueError(
                f"height {domain.pz} is not a multiple of the word {tau!r}"
            )
        sx = sum(TAU_STEP[tau[k % n]][0] for k in range(domain.pz))
        sy = sum(TAU_STEP[tau[k % n]][1] for k in range(domain.pz))
        if (sx - domain.zx) % 2 or (sy - domain.zy) % 2:
            raise ValueError(
                f"word {tau!r} does not close over height {domain.pz}:"
                f" needs vertical shear ({sx % 2}, {sy % 2}) mod 2,"
                f" domain has ({domain.zx % 2}, {domain.zy % 2})"
            )
        z_lo, z_hi = 0, domain.pz
    else:
        z_lo, z_hi = domain.lo[2], domain.hi[2]
    phases = _tau_phases(tau, z_lo, z_hi + 1, phase0)

    def keep(f: Face) -> bool:
        x, y, z = f.corner
        if f.normal is Axis.X:
            return y % 2 == phases[z][1]
        if f.normal is Axis.Y:
            return x % 2 == phases[z][0]
        p, q = phases[z]
        letter = tau[z % n]
        if letter == "0":
            return (x + y) % 2 == (p + q + 1) % 2
        if letter == "x":
            return x % 2 == (p + 1) % 2
        return y % 2 == (q + 1) % 2

    return _from_predicate(domain, keep)


# ---------------------------------------------------------------------------
# Minimal surface examples on windows


def gen_scherk(radius: int, height: int) -> FacePatch:
    """Discrete Scherk-type surface: a plane of vertical screws at
    z = 0 glued to parallel flat sheets, y-normal above and x-normal
    below.
    """
    if radius < 1 or height < 1:
        raise ValueError("radius and height must be positive")
    w = Window((-radius, -radius, -height), (radius, radius, height))

    def keep(f: Face) -> bool:
        x, y, z = f.corner
        if f.normal is Axis.Y:
            return z >= 0
        if f.normal is Axis.X:
            return z <= -1
        return z == 0 and x % 2 == y % 2

    return _from_predicate(w, keep)


def _solve_star(
    v: Vec3, present: set[Face], absent: set[Face], tag: Tag | None = None
) -> VertexConfig:
    """The unique legal star at v extending the known face statuses,
    optionally restricted to one config family."""
    candidates = []
    local_present = {f for f in faces_of_vertex(v) if f in present}
    for cfg in MINIMAL_CONFIGS:
        if tag is not None and cfg.tag is not tag:
            continue
        faces = cfg.faces_at(v)
        if local_present <= faces and not (faces & absent):
            candidates.append(cfg)
    if len(candidates) != 1:
        raise ValueError(f"completion at {v} not unique: {len(candidates)}")
    return candidates[0]


def flat_center_seed() -> FacePatch:
    """Mirror cell of the flat-center surface: one horizontal flat
    vertex ringed by four screws, closed up by the unique saddle
    completions at the diagonal neighbors.
    """
    w = Window((-2, -2, -1), (2, 2, 1))
    present: set[Face] = set()
    absent: set[Face] = set()

    def place(v: Vec3, faces: frozenset[Face]) -> None:
        present.update(faces)
        absent.update(set(faces_of_vertex(v)) - faces)

    flat = CONFIG_BY_PAIRS[
        frozenset(
            germ_pair(unit(Axis.X, sx), unit(Axis.Y, sy))
            for sx in (1, -1)
            for sy in (1, -1)
        )
    ]
    place((0, 0, 0), flat.faces_at((0, 0, 0)))
    # The +x neighbor is the S-handed x-axis screw fixed by the flat
    # disk; the other three are its images under quarter turns about z.
    base = screw_config(Axis.X, Axis.Z, Tag.S)
    quarter = ((0, -1, 0), (1, 0, 0), (0, 0, 1))
    spots = [(1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, -1, 0)]
    faces = base.faces_at((1, 0, 0))
    for i, v in enumerate(spots):
        if i:
            faces = frozenset(op_face(quarter, f) for f in faces)
        place(v, faces)
    # Each diagonal neighbor admits a screw and a saddle completion;
    # the flat-center surface closes with saddles.
    for v in [(1, 1, 0), (-1, 1, 0), (-1, -1, 0), (1, -1, 0)]:
        cfg = _solve_star(v, present, absent, tag=Tag.M)
        place(v, cfg.faces_at(v))
    return FacePatch.make(w, present)


def gen_flat_center(domain: Domain) -> FacePatch:
    """Minimal surface with isolated flat points, grown by mirror
    extension of the flat-center seed.
    """
    from cubelat.transforms import reflect_extend

    return reflect_extend(flat_center_seed(), domain)
