"""Cubic lattice polyhedra and discrete minimal surfaces."""

from cubelat.lattice import (
    AXES,
    Axis,
    Domain,
    Edge,
    Face,
    FacePatch,
    Torus,
    Vec3,
    Window,
)

__all__ = [
    "AXES",
    "Axis",
    "Domain",
    "Edge",
    "Face",
    "FacePatch",
    "Torus",
    "Vec3",
    "Window",
]
