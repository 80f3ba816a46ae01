"""Plain-text serialization for patches and certificates.

Patch format: a domain header followed by one face per line, corner
coordinates then the normal axis letter.  Blank lines and '#' comments
are skipped.

    domain torus 4 4 6 0 1 0     # px py pz, then shears yx zx zy
    domain window 0 0 0 2 2 2    # lo then hi, exclusive
    0 1 0 z

Certificate format: a '# summary' comment, the base word, the domain
row, then one replay step per line:

    cert tau xx
    domain 4 4 6 0 1 0
    insert x z SZSZ 1
    translate 0 0 4
    push z 0 1 2 3
    op 0 0 1 1 0 0 0 1 0
"""

from __future__ import annotations

from typing import Iterable

from cubelat.classify import ApplyOp, Certificate, Insert, Push, Step, Translate
from cubelat.lattice import Axis, Face, FacePatch, Torus, Window
from cubelat.local import Tag
from cubelat.transforms import SlabSpec

_AXIS = {a.name.lower(): a for a in Axis}


def _clean_lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _axis(token: str, lineno: int) -> Axis:
    try:
        return _AXIS[token.lower()]
    except KeyError:
        raise ValueError(f"line {lineno}: unknown axis {token!r}") from None


def dump_patch(patch: FacePatch) -> str:
    dom = patch.domain
    if isinstance(dom, Torus):
        head = "domain torus " + " ".join(
            str(n) for n in (dom.px, dom.py, dom.pz, dom.yx, dom.zx, dom.zy)
        )
    else:
        head = "domain window " + " ".join(
            str(n) for n in (*dom.lo, *dom.hi)
        )
    lines = [head]
    for f in sorted(patch.faces):
        x, y, z = f.corner
        lines.append(f"{x} {y} {z} {f.normal.name.lower()}")
    return "\n".join(lines) + "\n"


def parse_patch(text: str) -> FacePatch:
    domain = None
    faces = []
    for lineno, toks in _clean_lines(text):
        if toks[0] == "domain":
            if domain is not None:
                raise ValueError(f"line {lineno}: second domain header")
            domain = _parse_domain(toks[1:], lineno)
        elif domain is None:
            raise ValueError(f"line {lineno}: face before domain header")
        elif len(toks) == 4:
            try:
                corner = (int(toks[0]), int(toks[1]), int(toks[2]))
            except ValueError:
                raise ValueError(
                    f"line {lineno}: bad face corner {toks[:3]}"
                ) from None
            faces.append(Face(corner, _axis(toks[3], lineno)))
        else:
            raise ValueError(f"line {lineno}: expected 'x y z axis'")
    if domain is None:
        raise ValueError("missing domain header")
    return FacePatch.make(domain, faces)


def _parse_domain(toks: list[str], lineno: int):
    kind = toks[0] if toks else "?"
    nums = [int(t) for t in toks[1:]]
    if kind == "torus" and len(nums) in (3, 6):
        return Torus(*nums)
    if kind == "window" and len(nums) == 6:
        return Window(tuple(nums[:3]), tuple(nums[3:]))
    raise ValueError(f"line {lineno}: bad domain header {' '.join(toks)!r}")


# ---------------------------------------------------------------------------
# Certificates


def _dump_step(step: Step) -> str:
    if isinstance(step, Translate):
        return "translate " + " ".join(str(c) for c in step.t)
    if isinstance(step, ApplyOp):
        return "op " + " ".join(str(c) for row in step.op for c in row)
    if isinstance(step, Push):
        cells = " ".join(f"{i} {j}" for i, j in step.cells)
        return f"push {step.axis.name.lower()} {cells}"
    if isinstance(step, Insert):
        spec = step.spec
        hands = "".join(h.value for h in spec.hands)
        return (
            f"insert {spec.screw_axis.name.lower()}"
            f" {spec.span0.name.lower()} {hands} {step.count}"
        )
    raise TypeError(step)


def dump_certificate(cert: Certificate) -> str:
    dom = cert.domain
    lines = [
        f"# {cert.summary()}",
        f"cert {cert.kind} {cert.word}",
        "domain "
        + " ".join(str(n) for n in (dom.px, dom.py, dom.pz, dom.yx, dom.zx, dom.zy)),
    ]
    lines.extend(_dump_step(s) for s in cert.steps)
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> Certificate:
    kind = word = None
    domain = None
    steps: list[Step] = []
    for lineno, toks in _clean_lines(text):
        head, rest = toks[0], toks[1:]
        if head == "cert":
            if len(rest) != 2:
                raise ValueError(f"line {lineno}: expected 'cert kind word'")
            kind, word = rest
        elif head == "domain":
            nums = [int(t) for t in rest]
            if len(nums) != 6:
                raise ValueError(f"line {lineno}: domain needs 6 numbers")
            domain = Torus(*nums)
        elif head == "translate":
            steps.append(Translate((int(rest[0]), int(rest[1]), int(rest[2]))))
        elif head == "op":
            nums = [int(t) for t in rest]
            if len(nums) != 9:
                raise ValueError(f"line {lineno}: op needs 9 numbers")
            steps.append(ApplyOp((tuple(nums[0:3]), tuple(nums[3:6]), tuple(nums[6:9]))))
        elif head == "push":
            axis = _axis(rest[0], lineno)
            nums = [int(t) for t in rest[1:]]
            if not nums or len(nums) % 2:
                raise ValueError(f"line {lineno}: push needs cell pairs")
            cells = tuple(
                (nums[i], nums[i + 1]) for i in range(0, len(nums), 2)
            )
            steps.append(Push(axis, cells))
        elif head == "insert":
            if len(rest) != 4:
                raise ValueError(
                    f"line {lineno}: expected 'insert axis span hands count'"
                )
            hands = tuple(Tag(c) for c in rest[2])
            spec = SlabSpec(_axis(rest[0], lineno), _axis(rest[1], lineno), hands)
            steps.append(Insert(spec, int(rest[3])))
        else:
            raise ValueError(f"line {lineno}: unknown step {head!r}")
    if kind is None or domain is None:
        raise ValueError("certificate needs cert and domain lines")
    return Certificate(kind, word, domain, tuple(steps))
