"""Certificate-producing classification of cubic patches on tori.

The classifier reduces a patch step by step: reorientations, removal
of slabs (recording exact regrow specs), and eliminating tower pushes
found by solving a GF(2) system over pushable cells.  It bottoms out
at one of the generator families; the certificate stores the base
word plus the inverse step sequence, so rebuild() reproduces the
input face set exactly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Union

from cubelat.lattice import (
    AXES,
    Axis,
    FacePatch,
    IDENTITY_OP,
    PointOp,
    Torus,
    Vec3,
    add,
    neg,
    op_inverse,
    op_vec,
    unit,
)
from cubelat.local import SCREW_TAGS, Tag, classify_vertex, validate
from cubelat.words import canon_sigma, canon_tau
from cubelat.generators import gen_p_sigma, gen_p_tau
from cubelat.transforms import (
    Lattice2,
    SlabSpec,
    detect_slabs,
    find_towers,
    insert_slab,
    op_patch,
    project_lattice,
    push_cells,
    push_valid,
    remove_slab,
    tower_cells,
)


class UnclassifiableError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Certificate steps (applied to the base patch in rebuild order)


@dataclass(frozen=True)
class Translate:
    t: Vec3


@dataclass(frozen=True)
class ApplyOp:
    op: PointOp


@dataclass(frozen=True)
class Push:
    axis: Axis
    cells: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Insert:
    spec: SlabSpec
    count: int = 1


Step = Union[Translate, ApplyOp, Push, Insert]


@dataclass(frozen=True)
class Certificate:
    kind: str  # "sigma" or "tau"
    word: str
    domain: Torus
    steps: tuple[Step, ...] = ()

    @property
    def canonical_word(self) -> str:
        return canon_sigma(self.word) if self.kind == "sigma" else canon_tau(self.word)

    def summary(self) -> str:
        pushes = [s for s in self.steps if isinstance(s, Push)]
        inserts = [s for s in self.steps if isinstance(s, Insert)]
        if not pushes and not inserts and self.kind == "sigma":
            return f"allscrew sigma {self.word}"
        if not pushes and not inserts and "0" not in self.word:
            return f"allscrew tau {self.word}"
        line = f"pushed tau {self.word}" if self.kind == "tau" else (
            f"pushed sigma {self.word}"
        )
        for p in pushes:
            for i, j in p.cells:
                line += f" push {p.axis.name.lower()} {i} {j}"
        for s in inserts:
            spec = s.spec
            axis = spec.screw_axis.name.lower()
            if spec.trivial:
                kind = f"trivial {axis}"
            else:
                try:
                    kind = f"word {spec.omega()}"
                except ValueError:
                    kind = "hands " + "".join(h.value for h in spec.hands)
            line += f" +insert {axis} top {kind} {s.count}"
        return line


def apply_step(patch: FacePatch, step: Step) -> FacePatch:
    if isinstance(step, Translate):
        return patch.translate(step.t)
    if isinstance(step, ApplyOp):
        return op_patch(step.op, patch)
    if isinstance(step, Push):
        return push_cells(patch, step.axis, step.cells)
    if isinstance(step, Insert):
        return insert_slab(patch, step.spec, step.count)
    raise TypeError(step)


def rebuild(cert: Certificate) -> FacePatch:
    """Replay the certificate from its base generator to a patch."""
    if cert.kind == "sigma":
        patch = gen_p_sigma(cert.word, cert.domain)
    elif cert.kind == "tau":
        patch = gen_p_tau(cert.word, cert.domain)
    else:
        raise ValueError(f"unknown base kind {cert.kind!r}")
    for step in cert.steps:
        patch = apply_step(patch, step)
    return patch


def verify_certificate(cert: Certificate, patch: FacePatch) -> bool:
    built = rebuild(cert)
    return built.domain == patch.domain and built.faces == patch.faces


# ---------------------------------------------------------------------------
# GF(2) elimination systems


def _solve_gf2(
    eqs: list[tuple[int, int]], nvars: int
) -> Optional[tuple[int, list[int]]]:
    """Solve xor equations (mask, rhs) over nvars bits.

    Returns (particular solution mask, nullspace basis masks), or None.
    """
    rows = [(m, r) for m, r in eqs if m or r]
    pivots: dict[int, tuple[int, int]] = {}
    for m, r in rows:
        while m:
            low = m & -m
            if low in pivots:
                pm, pr = pivots[low]
                m ^= pm
                r ^= pr
            else:
                pivots[low] = (m, r)
                break
        else:
            if r:
                return None
    # back substitution puts every pivot row in reduced form
    for low in sorted(pivots, reverse=True):
        m, r = pivots[low]
        for low2 in list(pivots):
            if low2 == low:
                continue
            m2, r2 = pivots[low2]
            if m2 & low:
                pivots[low2] = (m2 ^ m, r2 ^ r)
    particular = 0
    pivot_bits = set()
    for low, (m, r) in pivots.items():
        pivot_bits.add(low)
        if r:
            particular |= low
    basis = []
    for i in range(nvars):
        bit = 1 << i
        if bit in pivot_bits:
            continue
        vec = bit
        for low, (m, r) in pivots.items():
            if m & bit:
                vec |= low
        basis.append(vec)
    return particular, basis


def _enumerate_solutions(particular: int, basis: list[int], cap: int = 4096):
    """All solutions of the affine space, cheapest first, capped."""
    if 2 ** len(basis) <= cap:
        sols = []
        for k in range(2 ** len(basis)):
            s = particular
            for i, b in enumerate(basis):
                if k >> i & 1:
                    s ^= b
            sols.append(s)
        sols.sort(key=lambda s: (bin(s).count("1"), s))
        return sols
    return [particular]


def _column_vertices(dom: Torus, axis: Axis, col: tuple[int, int]):
    p, q = axis.others
    v = [0, 0, 0]
    v[p], v[q] = col
    start = dom.wrap((v[0], v[1], v[2]))
    cur = start
    while True:
        yield cur
        cur = dom.wrap(add(cur, unit(axis)))
        if cur == start:
            return


def _elimination_push(
    work: FacePatch, kill: Axis
) -> Optional[tuple[tuple[tuple[int, int], ...], FacePatch]]:
    """A set of kill-axis tower pushes clearing every kill-axis screw,
    or None when no such set exists."""
    dom = work.domain
    lat = project_lattice(dom, kill)
    cols = list(lat.cells())
    bad = {}
    for u in cols:
        bad[u] = any(
            (cfg := classify_vertex(work, v)) is not None
            and cfg.tag in SCREW_TAGS
            and cfg.axis is kill
            for v in _column_vertices(dom, kill, u)
        )
    if not any(bad.values()):
        return None
    variables = tower_cells(work, kill)
    var_index = {c: i for i, c in enumerate(variables)}
    touching: dict[tuple[int, int], int] = {u: 0 for u in cols}
    for c, i in var_index.items():
        for du in (0, 1):
            for dv in (0, 1):
                u = lat.wrap((c[0] + du, c[1] + dv))
                touching[u] ^= 1 << i
    eqs = [(touching[u], 1 if bad[u] else 0) for u in cols]
    solved = _solve_gf2(eqs, len(variables))
    if solved is None:
        return None
    particular, basis = solved
    for sol in _enumerate_solutions(particular, basis):
        cells = tuple(variables[i] for i in range(len(variables)) if sol >> i & 1)
        if not cells:
            continue
        new = push_valid(work, kill, cells)
        if new is None:
            continue
        if any(
            (cfg := classify_vertex(new, v)) is not None
            and cfg.tag in SCREW_TAGS
            and cfg.axis is kill
            for v in new.domain.vertices()
        ):
            continue
        return cells, new
    return None


def _restoration_push(
    work: FacePatch, a: Axis
) -> Optional[tuple[tuple[tuple[int, int], ...], FacePatch]]:
    """A set of a-axis tower pushes making every vertex an a-axis screw,
    or None.  This is the inverse problem of elimination: a pushed
    column surface is recognized by pushing the disturbance back."""
    dom = work.domain
    lat = project_lattice(dom, a)
    cols = list(lat.cells())
    bad = {}
    for u in cols:
        bad[u] = any(
            (cfg := classify_vertex(work, v)) is None
            or cfg.tag not in SCREW_TAGS
            or cfg.axis is not a
            for v in _column_vertices(dom, a, u)
        )
    if not any(bad.values()):
        return None
    variables = tower_cells(work, a)
    var_index = {c: i for i, c in enumerate(variables)}
    touching: dict[tuple[int, int], int] = {u: 0 for u in cols}
    for c, i in var_index.items():
        for du in (0, 1):
            for dv in (0, 1):
                u = lat.wrap((c[0] + du, c[1] + dv))
                touching[u] ^= 1 << i
    eqs = [(touching[u], 1 if bad[u] else 0) for u in cols]
    solved = _solve_gf2(eqs, len(variables))
    if solved is None:
        return None
    particular, basis = solved
    for sol in _enumerate_solutions(particular, basis):
        cells = tuple(variables[i] for i in range(len(variables)) if sol >> i & 1)
        if not cells:
            continue
        new = push_valid(work, a, cells)
        if new is None:
            continue
        if any(
            (cfg := classify_vertex(new, v)) is None
            or cfg.tag not in SCREW_TAGS
            or cfg.axis is not a
            for v in new.domain.vertices()
        ):
            continue
        return cells, new
    return None


def _screw_strips(work: FacePatch, a: Axis) -> Optional[dict]:
    """Per (transverse coord, level): whether the a-line of vertices
    there consists entirely of a-axis screws.  None when some line is
    mixed, which no slab surgery can repair."""
    dom = work.domain
    b = next(ax for ax in (Axis.X, Axis.Y) if ax != a)
    periods = (dom.px, dom.py, dom.pz)
    out = {}
    for m in range(periods[b]):
        for z in range(dom.pz):
            hits = 0
            total = 0
            for n in range(periods[a]):
                v = [0, 0, 0]
                v[a], v[b], v[2] = n, m, z
                cfg = classify_vertex(work, dom.wrap((v[0], v[1], v[2])))
                total += 1
                if cfg is not None and cfg.tag in SCREW_TAGS and cfg.axis is a:
                    hits += 1
            if hits not in (0, total):
                return None
            out[(m, z)] = hits == total
    return out


def _strip_state(work: FacePatch, a: Axis) -> Optional[tuple]:
    """Strip planes per transverse coordinate: s[m] is the set of
    levels whose a-line at m is all a-screws.  None on mixed lines."""
    strips = _screw_strips(work, a)
    if strips is None:
        return None
    dom = work.domain
    nb = {Axis.X: dom.py, Axis.Y: dom.px}[a]
    return tuple(
        frozenset(z for z in range(dom.pz) if strips[(m, z)])
        for m in range(nb)
    )


def _staircase_plans(
    start: tuple, pz: int, max_plans: int = 40, max_nodes: int = 4000
) -> list[tuple]:
    """Short push sequences reassembling a full strip plane.

    A push at cell (m, z) slides strips of coordinates m and m+1
    between levels z and z+1; strip counts per coordinate never change.
    Breadth first, so plans come out shortest first.
    """
    nb = len(start)

    def solved(st):
        return any(all(z in s for s in st) for z in range(pz))

    plans: list[tuple] = []
    seen = {start}
    queue = deque([(start, ())])
    nodes = 0
    while queue and nodes < max_nodes and len(plans) < max_plans:
        st, path = queue.popleft()
        nodes += 1
        for m in range(nb):
            for z in range(pz):
                zn = (z + 1) % pz
                if zn == z:
                    continue
                new = list(st)
                touched = False
                for c in {m, (m + 1) % nb}:
                    s = st[c]
                    lo_in, hi_in = z in s, zn in s
                    if lo_in != hi_in:
                        touched = True
                        new[c] = frozenset(
                            (s - {z, zn}) | ({zn} if lo_in else {z})
                        )
                if not touched:
                    continue
                nst = tuple(new)
                if nst in seen:
                    continue
                seen.add(nst)
                npath = path + ((m, z),)
                if solved(nst):
                    plans.append(npath)
                else:
                    queue.append((nst, npath))
    return plans


def _repair_staircase(
    work: FacePatch,
) -> Optional[tuple[list[Step], FacePatch]]:
    """Reassemble a slab whose screw strips were slid across levels by
    pushes straddling its plane.  Searches short push sequences in the
    strip model, then verifies each candidate on the patch itself.
    Returns the undo steps in rebuild order plus the repaired patch."""
    dom = work.domain
    for a in (Axis.X, Axis.Y):
        start = _strip_state(work, a)
        if start is None or any(not s for s in start):
            continue
        if any(all(z in s for s in start) for z in range(dom.pz)):
            continue  # an intact plane already exists; not our job
        for plan in _staircase_plans(start, dom.pz):
            cur = work
            ok = True
            for cell in plan:
                nxt = push_valid(cur, a, [cell])
                if nxt is None:
                    ok = False
                    break
                cur = nxt
            if not ok:
                continue
            end = _strip_state(cur, a)
            if end is None or not any(
                all(z in s for s in end) for z in range(dom.pz)
            ):
                continue
            steps = [Push(a, (cell,)) for cell in reversed(plan)]
            return steps, cur
    return None


# ---------------------------------------------------------------------------
# Reorientations


def _axis_to_z(axis: Axis) -> PointOp:
    if axis is Axis.Z:
        return IDENTITY_OP
    if axis is Axis.X:
        return ((0, 0, -1), (0, 1, 0), (1, 0, 0))  # x -> z, z -> -x
    return ((1, 0, 0), (0, 0, -1), (0, 1, 0))  # y -> z, z -> -y


# ---------------------------------------------------------------------------
# Finishing moves: match the worked patch to a generator exactly


def _config_map(patch: FacePatch) -> dict:
    out = {}
    for v in patch.domain.vertices():
        cfg = classify_vertex(patch, v)
        if cfg is None:
            raise UnclassifiableError(f"illegal vertex at {v}")
        out[v] = cfg
    return out


def _tau_ready(cfgs: dict, dom: Torus) -> bool:
    """Every horizontal plane uniform: all saddles, or all screws of
    one horizontal axis.  Only such patches can read as a wall word."""
    for z in range(dom.pz):
        kinds = {
            cfgs[dom.wrap((x, y, z))].axis
            for x in range(dom.px)
            for y in range(dom.py)
        }
        if len(kinds) > 1 or kinds == {Axis.Z}:
            return False
    return True


def _finish_sigma(work: FacePatch, undo: list[Step]) -> Certificate:
    dom = work.domain
    for j in range(dom.pz):
        moved = work.translate((0, 0, j))
        word = "".join(
            classify_vertex(moved, (0, 0, k)).tag.value for k in range(dom.pz)
        )
        try:
            base = gen_p_sigma(word, dom)
        except ValueError:
            continue
        if base.faces == moved.faces:
            steps = []
            if j:
                steps.append(Translate((0, 0, -j)))
            return Certificate("sigma", word, dom, tuple(steps + undo))
    raise UnclassifiableError("screw column field matches no sigma word")


def _read_tau_word(patch: FacePatch, cfgs: dict) -> str:
    dom = patch.domain
    letters = []
    for z in range(dom.pz):
        axes = {
            cfgs[dom.wrap((x, y, z))].axis
            for x in range(dom.px)
            for y in range(dom.py)
        }
        if axes == {None}:
            letters.append("0")
        elif axes == {Axis.X}:
            letters.append("x")
        elif axes == {Axis.Y}:
            letters.append("y")
        else:
            raise UnclassifiableError(f"mixed screw axes in plane z={z}")
    return "".join(letters)


def _finish_tau(work: FacePatch, undo: list[Step]) -> Certificate:
    """Match an all-M / layered patch against a tau word, searching
    translations of the box."""
    dom = work.domain
    for tz in range(dom.pz):
        for tx in range(dom.px):
            for ty in range(dom.py):
                t = (tx, ty, tz)
                moved = work.translate(t)
                try:
                    cfgs = _config_map(moved)
                    word = _read_tau_word(moved, cfgs)
                except UnclassifiableError:
                    continue
                try:
                    base = gen_p_tau(word, dom)
                except ValueError:
                    continue
                if base.faces == moved.faces:
                    steps = []
                    if t != (0, 0, 0):
                        steps.append(Translate(neg(t)))
                    return Certificate("tau", word, dom, tuple(steps + undo))
    raise UnclassifiableError("patch matches no tau word")


def _normalize_last_slab(
    work: FacePatch, undo: list[Step]
) -> tuple[FacePatch, list[Step]]:
    """On a height-1 torus a pushed slab cannot be peeled; instead undo
    its horizontal tower pushes so the plain word matches."""
    dom = work.domain
    cfgs = _config_map(work)
    axes = {c.axis for c in cfgs.values()}
    if dom.pz != 1 or len(axes) != 1 or None in axes:
        return work, undo
    a = axes.pop()
    b = next(ax for ax in (Axis.X, Axis.Y) if ax != a)
    periods = (dom.px, dom.py, dom.pz)
    hands = []
    for m in range(periods[b]):
        v = [0, 0, 0]
        v[b] = m
        hands.append(cfgs[dom.wrap((v[0], v[1], v[2]))].tag)
    flipped = {
        m for m, h in enumerate(hands)
        if (h is Tag.S) != ((hands[0] is Tag.S) == (m % 2 == 0))
    }
    if not flipped:
        return work, undo
    for c in (0, 1):
        blocks = []
        ok = True
        n = len(hands)
        for t0 in range(n // 2):
            pair = {(c + 2 * t0) % n, (c + 2 * t0 + 1) % n}
            hit = pair & flipped
            if hit == pair:
                blocks.append((c + 2 * t0) % n)
            elif hit:
                ok = False
                break
        if ok and blocks:
            cells = tuple((m, 0) for m in blocks)
            new = push_valid(work, a, cells)
            if new is not None:
                return new, [Push(a, cells)] + undo
    return work, undo


# ---------------------------------------------------------------------------
# Main pipeline


def classify(patch: FacePatch) -> Certificate:
    """Produce a certificate whose rebuild reproduces patch exactly."""
    if not isinstance(patch.domain, Torus):
        raise ValueError("classification runs on torus patches")
    report = validate(patch, "cubic")
    if not report.ok:
        raise ValueError(f"not a valid patch: {report.summary()}")

    work = patch
    undo: list[Step] = []
    seen: set[FacePatch] = set()
    bound = 4 * patch.domain.volume + 8
    for _ in range(bound):
        seen.add(work)
        cfgs = _config_map(work)
        tags = {c.tag for c in cfgs.values()}
        axes = {c.axis for c in cfgs.values() if c.tag in SCREW_TAGS}

        if tags == {Tag.M}:
            return _finish_tau(work, undo)

        if Tag.M not in tags:
            if axes == {Axis.Z}:
                return _finish_sigma(work, undo)
            # a wall stack reads as a letter word in the standing frame
            try:
                return _finish_tau(work, undo)
            except UnclassifiableError:
                pass
            if len(axes) == 1:
                op = _axis_to_z(axes.pop())
                work = op_patch(op, work)
                undo.insert(0, ApplyOp(op_inverse(op)))
                continue
            if len(axes) == 2:
                normal = next(a for a in AXES if a not in axes)
                if normal is not Axis.Z:
                    op = _axis_to_z(normal)
                    work = op_patch(op, work)
                    undo.insert(0, ApplyOp(op_inverse(op)))
                    continue
                if work.domain.pz == 1:
                    work, undo = _normalize_last_slab(work, undo)
                    return _finish_tau(work, undo)
                # fall through to slab peeling
            if len(axes) == 3:
                raise UnclassifiableError("screws along all three axes")
        elif axes and _tau_ready(cfgs, work.domain):
            # uniform planes: the patch may be an exact wall word
            try:
                return _finish_tau(work, undo)
            except UnclassifiableError:
                pass

        if Tag.M in tags and len(axes) == 1:
            # a disturbed column surface: push the disturbance back
            a = next(iter(axes))
            restored = _restoration_push(work, a)
            if restored is not None:
                cells, work = restored
                undo.insert(0, Push(a, cells))
                continue

        slabs = detect_slabs(work)
        z_levels = [s.level for s in slabs if s.normal is Axis.Z]
        if z_levels:
            level = max(z_levels)
            work, spec = remove_slab(work, level)
            undo.insert(0, Translate((0, 0, level + 1)))
            undo.insert(0, Insert(spec))
            continue
        if slabs:
            # only sideways slabs: rotate one stack upright, skipping
            # charts already visited (shears can fold slabs out of view,
            # and blind reorientation then cycles between charts)
            by_normal: dict[Axis, list] = {}
            for s in slabs:
                by_normal.setdefault(s.normal, []).append(s)
            reoriented = False
            for normal in sorted(by_normal, key=lambda a: -len(by_normal[a])):
                op = _axis_to_z(normal)
                cand = op_patch(op, work)
                if cand in seen:
                    continue
                work = cand
                undo.insert(0, ApplyOp(op_inverse(op)))
                reoriented = True
                break
            if reoriented:
                continue

        repaired = _repair_staircase(work)
        if repaired is not None:
            steps, work = repaired
            undo[:0] = steps
            continue

        progressed = False
        for kill in (Axis.Z, Axis.Y, Axis.X):
            found = _elimination_push(work, kill)
            if found is not None:
                cells, work = found
                undo.insert(0, Push(kill, cells))
                progressed = True
                break
        if not progressed:
            raise UnclassifiableError(
                "mixed patch with no slab and no eliminating push"
            )
    raise UnclassifiableError("classification did not converge")

# ---------------------------------------------------------------------------
# Convenience entry points


def classify_all_screw(patch: FacePatch) -> Certificate:
    """Classify a patch after checking it carries no saddles.

    Untwisted parallel column surfaces double as layered wall words
    and classify as tau there; only twisted or crossing column
    surfaces come back with a sigma certificate.
    """
    report = validate(patch, "cubic")
    if not report.ok:
        raise ValueError(f"not a valid patch: {report.summary()}")
    if report.tag_counts[Tag.M.value]:
        raise ValueError("patch has saddle vertices; use classify")
    return classify(patch)


def tower_parity(
    patch: FacePatch, axis: Axis = Axis.Z
) -> dict[tuple[int, int], int]:
    """0 for each saddle tower, 1 for each screw tower.

    Pushing a tower flips its own parity.  Towers sharing a corner
    column with the pushed cell mix both kinds afterwards and are
    omitted here.
    """
    out = {}
    for t in find_towers(patch, axis):
        if t.diagram_class == 1:
            out[t.base] = 0
        elif t.diagram_class == 6:
            out[t.base] = 1
    return out


def eliminate_vertical_columns(
    patch: FacePatch, axis: Axis = Axis.Z
) -> Optional[tuple[tuple[tuple[int, int], ...], FacePatch]]:
    """One set of tower pushes clearing every screw column along the
    axis, or None when columns exist but no pushing set removes them.
    Returns the pushed cells and the resulting patch."""
    return _elimination_push(patch, axis)
