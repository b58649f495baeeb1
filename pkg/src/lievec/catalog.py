"""Small named algebras used by the tests, demos and documentation."""

from ._rational import Q
from .liealg import LieAlgebra
from .textio import parse_algebra_file

SOURCES = {
    "line_translation": """\
# Translations of the line.
vars: y
d_y
""",
    "line_affine": """\
# Affine algebra of the line.
vars: y
d_y
y*d_y
""",
    "heisenberg": """\
# Graded nilpotent algebra for weights y:1, z:2.
vars: y, z
weights: 1, 2
d_y
d_z
y*d_z
""",
    "nilpotent_height3": """\
# Transitive nilpotent algebra of height 3 in the plane.
vars: x, y
d_x
d_y
y*d_x
y^2*d_x
""",
    "solvable_plane": """\
# Six-dimensional transitive solvable algebra in the plane.
vars: x, y
d_x
d_y
x*d_x
y*d_y
y^2*d_x
y*d_x
""",
    "exp_trig": """\
# Solvable algebra with exponential and trigonometric coefficients in x.
vars: x, y, z, u
weights: 0, 1, 2, 3
d_x
y*d_y
z*d_z
u*d_u
sin(x)*d_u
cos(x)*d_u
exp(x)*y*d_u
d_z
exp(2*x)*d_u
d_u
cos(x)*z*d_u
sin(x)*z*d_u
y^2*d_u
y*d_z
d_y
sin(x)*y*d_u
cos(x)*y*d_u
y*d_u
""",
}


def names():
    return sorted(SOURCES)


def load(name):
    """Parsed :class:`AlgebraFile` for a catalog entry."""
    return parse_algebra_file(SOURCES[name])


def trap_algebra():
    """``R x (v1, v2, v3)`` with ``ad x = diag(1, R)``, ``R`` a rotation-scaling by ``1/4 +- 3/4 i``.

    The trace form ``tr(ad x ad x) = 1 + 2 (1/16 - 9/16)`` vanishes, so a
    kernel computed from the trace form of the algebra itself wrongly
    contains ``x``.
    """
    a, b = Q(1, 4), Q(3, 4)
    return LieAlgebra.from_brackets(
        4,
        {
            (0, 1): {1: Q(1)},
            (0, 2): {2: a, 3: b},
            (0, 3): {2: -b, 3: a},
        },
        names=["x", "v1", "v2", "v3"],
    )


__all__ = ["SOURCES", "names", "load", "trap_algebra"]
