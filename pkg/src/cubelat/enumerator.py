"""Exhaustive enumeration of cubic and discrete-minimal face sets.

Every vertex of a torus must carry one of the legal star
configurations, and a configuration decides all twelve faces incident
to its vertex.  The search therefore runs over faces with unit
propagation: each vertex keeps the set of configurations compatible
with the faces decided so far, and bits forced by every surviving
configuration are committed before branching.

A legal star at every vertex already implies the edge condition (two
faces per edge, or zero for discrete-minimal vertices), so leaves need
only the connectivity filter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from cubelat.lattice import (
    Face,
    FacePatch,
    Torus,
    connected_components,
    faces_of_vertex,
)
from cubelat.local import CUBIC_CONFIGS, MINIMAL_CONFIGS
from cubelat.transforms import reduce_by_congruence

MODES = ("cubic", "minimal")


@dataclass(frozen=True)
class EnumerationConfig:
    """What to enumerate.

    connected_only keeps patches with exactly one face component; the
    empty face set is reported only in minimal mode with the filter
    off.
    """

    domain: Torus
    mode: str = "cubic"
    connected_only: bool = True

    def __post_init__(self) -> None:
        if self.mode == "discrete_minimal":
            object.__setattr__(self, "mode", "minimal")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if min(self.domain.px, self.domain.py, self.domain.pz) < 2:
            # a period-1 direction folds two corners of one face onto
            # the same vertex slot, which the star tables do not model
            raise ValueError("enumeration needs all periods >= 2")


def _tables(cfg: EnumerationConfig) -> tuple[list[Face], list[tuple[int, tuple[int, ...]]]]:
    """Global face order plus, per vertex, its incident-face mask and
    the face mask of every allowed configuration."""
    dom = cfg.domain
    faces = sorted(dom.all_faces())
    index = {f: i for i, f in enumerate(faces)}
    configs = CUBIC_CONFIGS if cfg.mode == "cubic" else MINIMAL_CONFIGS
    tables = []
    for v in dom.vertices():
        incident = 0
        for f in faces_of_vertex(v):
            incident |= 1 << index[dom.wrap_face(f)]
        cands = []
        for c in configs:
            m = 0
            for f in c.faces_at(v):
                m |= 1 << index[dom.wrap_face(f)]
            cands.append(m)
        tables.append((incident, tuple(cands)))
    return faces, tables


def _propagate(
    tables: list[tuple[int, tuple[int, ...]]], present: int, absent: int
) -> Optional[tuple[int, int]]:
    """Close (present, absent) under forced bits, or None on conflict."""
    while True:
        changed = False
        for incident, cands in tables:
            live_or = 0
            live_and = incident
            n = 0
            for m in cands:
                if m & absent:
                    continue
                if present & incident & ~m:
                    continue
                live_or |= m
                live_and &= m
                n += 1
            if n == 0:
                return None
            force_on = live_and & ~present
            force_off = incident & ~live_or & ~absent
            if force_on or force_off:
                present |= force_on
                absent |= force_off
                changed = True
        if not changed:
            return present, absent


def enumerate_patches(cfg: EnumerationConfig) -> Iterator[FacePatch]:
    """All face sets satisfying the local conditions everywhere."""
    faces, tables = _tables(cfg)
    full = (1 << len(faces)) - 1

    def emit(present: int) -> FacePatch:
        return FacePatch.make(
            cfg.domain,
            [faces[i] for i in range(len(faces)) if present >> i & 1],
        )

    def walk(present: int, absent: int) -> Iterator[FacePatch]:
        closed = _propagate(tables, present, absent)
        if closed is None:
            return
        present, absent = closed
        undecided = full & ~present & ~absent
        if not undecided:
            patch = emit(present)
            if cfg.connected_only and len(connected_components(patch)) != 1:
                return
            yield patch
            return
        bit = undecided & -undecided
        yield from walk(present | bit, absent)
        yield from walk(present, absent | bit)

    yield from walk(0, 0)


@dataclass(frozen=True)
class CensusReport:
    domain: Torus
    mode: str
    n_face_sets: int
    class_sizes: tuple[int, ...]

    def summary(self) -> str:
        sizes = "+".join(str(s) for s in self.class_sizes)
        return (
            f"{self.mode} census on {self.domain}: "
            f"{self.n_face_sets} face sets, classes {sizes or '-'}"
        )


def census(cfg: EnumerationConfig) -> CensusReport:
    """Counts plus congruence class sizes for the enumeration."""
    patches = list(enumerate_patches(cfg))
    groups = reduce_by_congruence(patches)
    return CensusReport(
        domain=cfg.domain,
        mode=cfg.mode,
        n_face_sets=len(patches),
        class_sizes=tuple(sorted(len(g) for g in groups)),
    )
