"""Command line front end.

Exit codes: 0 on success, 1 when a domain operation fails (invalid
patch, unclassifiable input, impossible surgery), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from cubelat.classify import UnclassifiableError, classify, rebuild
from cubelat.diagrams import local_diagram, slice_diagram
from cubelat.enumerator import EnumerationConfig, census, enumerate_patches
from cubelat.generators import gen_p0, gen_p1, gen_p_sigma, gen_p_tau
from cubelat.lattice import Axis, FacePatch, Torus, Window, add, unit
from cubelat.local import Tag, validate
from cubelat.patchio import (
    dump_certificate,
    dump_patch,
    parse_certificate,
    parse_patch,
)
from cubelat.topology import face_orientations, topology_report
from cubelat.transforms import (
    SlabSpec,
    insert_slab,
    insertable_specs,
    push_valid,
    reduce_by_congruence,
    remove_slab,
)

_AXIS = {a.name.lower(): a for a in Axis}


class CliError(Exception):
    """Failure of the requested operation (exit code 1)."""


def _read_patch(path: str) -> FacePatch:
    try:
        return parse_patch(Path(path).read_text())
    except (OSError, ValueError) as e:
        raise CliError(f"cannot read patch {path}: {e}") from None


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _domain(args):
    if args.window is not None:
        lo, hi = tuple(args.window[:3]), tuple(args.window[3:])
        return Window(lo, hi)
    if args.torus is None:
        raise CliError("need --torus or --window")
    shears = args.shears or [0, 0, 0]
    try:
        return Torus(*args.torus, *shears)
    except ValueError as e:
        raise CliError(str(e)) from None


def _axis_arg(token: str) -> Axis:
    try:
        return _AXIS[token.lower()]
    except KeyError:
        raise CliError(f"unknown axis {token!r}") from None


# ---------------------------------------------------------------- commands


def _cmd_gen(args) -> int:
    dom = _domain(args)
    try:
        if args.kind == "p0":
            patch = gen_p0(dom)
        elif args.kind == "p1":
            patch = gen_p1(dom)
        elif args.kind == "sigma":
            if not args.word:
                raise CliError("gen sigma needs --word")
            patch = gen_p_sigma(args.word.upper(), dom)
        else:
            if not args.word:
                raise CliError("gen tau needs --word")
            patch = gen_p_tau(args.word.lower(), dom)
    except ValueError as e:
        raise CliError(str(e)) from None
    _write(dump_patch(patch), args.out)
    return 0


def _cmd_validate(args) -> int:
    patch = _read_patch(args.patch)
    report = validate(patch, args.mode)
    print(report.summary())
    for line in report.lines():
        print(line)
    return 0 if report.ok else 1


def _cmd_classify(args) -> int:
    patch = _read_patch(args.patch)
    try:
        cert = classify(patch)
    except (UnclassifiableError, ValueError) as e:
        raise CliError(str(e)) from None
    print(cert.summary())
    if args.cert:
        Path(args.cert).write_text(dump_certificate(cert))
    return 0


def _cmd_rebuild(args) -> int:
    try:
        cert = parse_certificate(Path(args.cert).read_text())
        patch = rebuild(cert)
    except (OSError, ValueError) as e:
        raise CliError(str(e)) from None
    _write(dump_patch(patch), args.out)
    return 0


def _cmd_push(args) -> int:
    patch = _read_patch(args.patch)
    axis = _axis_arg(args.axis)
    cells = [tuple(args.base[i:i + 2]) for i in range(0, len(args.base), 2)]
    new = push_valid(patch, axis, cells)
    if new is None:
        raise CliError("push breaks a vertex star")
    _write(dump_patch(new), args.out)
    return 0


def _cmd_slab(args) -> int:
    patch = _read_patch(args.patch)
    if args.action == "remove":
        try:
            new, spec = remove_slab(patch, args.level)
        except ValueError as e:
            raise CliError(str(e)) from None
        hands = "".join(h.value for h in spec.hands)
        print(
            f"removed slab: screw {spec.screw_axis.name.lower()}"
            f" span {spec.span0.name.lower()} hands {hands}"
        )
        _write(dump_patch(new), args.out)
        return 0
    spec = _insert_spec(args, patch)
    try:
        new = insert_slab(patch, spec, args.count)
    except ValueError as e:
        raise CliError(str(e)) from None
    report = validate(new)
    if not report.ok:
        raise CliError(f"inserted slab does not close up: {report.summary()}")
    _write(dump_patch(new), args.out)
    return 0


def _insert_spec(args, patch: FacePatch) -> SlabSpec:
    if args.hands:
        if not args.axis:
            raise CliError("slab insert --hands needs --axis")
        hands = tuple(Tag(c) for c in args.hands.upper())
        span0 = _axis_arg(args.span) if args.span else Axis.Z
        return SlabSpec(_axis_arg(args.axis), span0, hands)
    specs = insertable_specs(patch)
    if args.axis:
        specs = [s for s in specs if s.screw_axis is _axis_arg(args.axis)]
    if not specs:
        raise CliError("no slab fits the seam")
    return specs[0]


def _cmd_topology(args) -> int:
    patch = _read_patch(args.patch)
    print(topology_report(patch).summary())
    return 0


def _cmd_enumerate(args) -> int:
    dom = Torus(*args.torus, *(args.shears or [0, 0, 0]))
    mode = "minimal" if args.minimal else "cubic"
    cfg = EnumerationConfig(dom, mode=mode, connected_only=not args.all)
    patches = list(enumerate_patches(cfg))
    lines = [f"total {len(patches)}"]
    if args.up_to_congruence:
        groups = reduce_by_congruence(patches)
        patches = [patches[g[0]] for g in groups]
        lines.append(f"classes {len(patches)}")
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        width = max(4, len(str(len(patches))))
        for i, p in enumerate(patches):
            name = f"patch_{i:0{width}d}.txt"
            (outdir / name).write_text(dump_patch(p))
        (outdir / "counts.txt").write_text("\n".join(lines) + "\n")
    for line in lines:
        print(line)
    return 0


def _cmd_diagram(args) -> int:
    patch = _read_patch(args.patch)
    plane = (_axis_arg(args.plane[0]), int(args.plane[1]))
    try:
        if args.cell:
            pic = local_diagram(patch, plane, tuple(args.cell))
        else:
            pic = slice_diagram(patch, plane)
    except ValueError as e:
        raise CliError(str(e)) from None
    if args.format == "svg":
        out = pic.to_svg() if args.cell is None else pic.to_planar().to_svg()
        _write(out + "\n", args.out)
    else:
        _write(pic.to_ascii() + "\n", args.out)
    return 0


def _cmd_export(args) -> int:
    patch = _read_patch(args.patch)
    text = _mesh_text(patch, args.format, args.triangles)
    _write(text, args.out)
    return 0


def _mesh_text(patch: FacePatch, fmt: str, triangles: bool) -> str:
    flips = face_orientations(patch) or {}
    verts: dict = {}
    order = []

    def vid(v) -> int:
        if v not in verts:
            verts[v] = len(verts)
            order.append(v)
        return verts[v]

    polys = []
    for f in sorted(patch.faces):
        p, q = f.spans
        quad = [
            f.corner,
            add(f.corner, unit(p)),
            add(add(f.corner, unit(p)), unit(q)),
            add(f.corner, unit(q)),
        ]
        if flips.get(f):
            quad.reverse()
        ids = [vid(v) for v in quad]
        if triangles:
            polys.append([ids[0], ids[1], ids[2]])
            polys.append([ids[0], ids[2], ids[3]])
        else:
            polys.append(ids)
    if fmt == "obj":
        lines = [f"v {x} {y} {z}" for x, y, z in order]
        lines += ["f " + " ".join(str(i + 1) for i in ids) for ids in polys]
    else:
        lines = ["OFF", f"{len(order)} {len(polys)} 0"]
        lines += [f"{x} {y} {z}" for x, y, z in order]
        lines += [f"{len(ids)} " + " ".join(str(i) for i in ids) for ids in polys]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- parser


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="cubelat",
        description="Cubic lattice polyhedra: generate, validate, "
        "transform, classify, and export.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_domain(p):
        p.add_argument("--torus", type=int, nargs=3, metavar=("PX", "PY", "PZ"))
        p.add_argument("--shears", type=int, nargs=3, metavar=("YX", "ZX", "ZY"))
        p.add_argument(
            "--window", type=int, nargs=6,
            metavar=("LOX", "LOY", "LOZ", "HIX", "HIY", "HIZ"),
        )

    p = sub.add_parser("gen", help="generate a named surface")
    p.add_argument("--kind", choices=("p0", "p1", "sigma", "tau"), required=True)
    p.add_argument("--word")
    add_domain(p)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("validate", help="check the local conditions")
    p.add_argument("patch")
    p.add_argument("--mode", choices=("cubic", "minimal"), default="cubic")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("classify", help="certificate for a torus patch")
    p.add_argument("patch")
    p.add_argument("--cert", help="write the full certificate here")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("rebuild", help="replay a certificate")
    p.add_argument("cert")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_rebuild)

    p = sub.add_parser("push", help="toggle tower cell lines")
    p.add_argument("patch")
    p.add_argument("--axis", required=True)
    p.add_argument(
        "--base", type=int, nargs="+", required=True,
        help="cell pairs i j [i j ...]",
    )
    p.add_argument("--out")
    p.set_defaults(func=_cmd_push)

    p = sub.add_parser("slab", help="remove or insert a z-normal slab")
    p.add_argument("action", choices=("remove", "insert"))
    p.add_argument("patch")
    p.add_argument("--level", type=int, help="vertex plane to remove")
    p.add_argument("--axis", help="screw axis for insert")
    p.add_argument("--span", help="span axis at column zero")
    p.add_argument("--hands", help="hand row, e.g. SZSZ")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_slab)

    p = sub.add_parser("topology", help="global invariants")
    p.add_argument("patch")
    p.set_defaults(func=_cmd_topology)

    p = sub.add_parser("enumerate", help="brute-force census on a torus")
    p.add_argument("--torus", type=int, nargs=3, required=True,
                   metavar=("PX", "PY", "PZ"))
    p.add_argument("--shears", type=int, nargs=3, metavar=("YX", "ZX", "ZY"))
    p.add_argument("--minimal", action="store_true")
    p.add_argument("--all", action="store_true",
                   help="include disconnected face sets")
    p.add_argument("--up-to-congruence", action="store_true")
    p.add_argument("--out", help="directory for patch files and counts.txt")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("diagram", help="slice picture of a patch")
    p.add_argument("patch")
    p.add_argument("--plane", nargs=2, required=True, metavar=("AXIS", "LEVEL"))
    p.add_argument("--cell", type=int, nargs=2, metavar=("U", "V"),
                   help="local diagram around one cell")
    p.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_diagram)

    p = sub.add_parser("export", help="write a mesh file")
    p.add_argument("patch")
    p.add_argument("--format", choices=("obj", "off"), default="obj")
    p.add_argument("--triangles", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_export)

    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
