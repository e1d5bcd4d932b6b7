"""Bundled algebras: small test quivers and the shipped worked example.

The shipped example is a gentle 14-dimensional algebra S on six vertices
(a four-cycle with all consecutive compositions killed, plus an arm
6 -> 4 -> 5 with its through-composition killed), the one-point algebra R
at vertex 7, and the 16-dimensional gluing L obtained by adding the cross
arrow a7: 5 -> 7 with relation a6*a7.
"""

from __future__ import annotations

from .comma import TriangularSetup, build_setup
from .exactla import GF2, Field
from .quiver import Arrow, Quiver, build_algebra, make_path


def a2_algebra(field: Field = GF2):
    q = Quiver((1, 2), (Arrow("a", 1, 2),))
    return build_algebra(field, q, [])


def loop_algebra(field: Field = GF2):
    q = Quiver((1,), (Arrow("x", 1, 1),))
    return build_algebra(field, q, [make_path(q, ["x", "x"])])


def square_algebra(field: Field = GF2):
    q = Quiver(
        (1, 2, 3, 4),
        (Arrow("a", 1, 2), Arrow("b", 2, 4), Arrow("c", 1, 3), Arrow("d", 3, 4)),
    )
    return build_algebra(field, q, [make_path(q, ["a", "b"]), make_path(q, ["c", "d"])])


def point_algebra(field: Field = GF2, vertex=7):
    return build_algebra(field, Quiver((vertex,), ()), [])


def hexagon_algebra(field: Field = GF2):
    q = Quiver(
        (1, 2, 3, 4, 5, 6),
        (
            Arrow("a1", 1, 2),
            Arrow("a2", 2, 3),
            Arrow("a3", 3, 4),
            Arrow("a4", 4, 1),
            Arrow("a5", 6, 4),
            Arrow("a6", 4, 5),
        ),
    )
    rels = [
        make_path(q, ["a1", "a2"]),
        make_path(q, ["a2", "a3"]),
        make_path(q, ["a3", "a4"]),
        make_path(q, ["a4", "a1"]),
        make_path(q, ["a5", "a6"]),
    ]
    return build_algebra(field, q, rels)


def glued_algebra(field: Field = GF2):
    q = Quiver(
        (1, 2, 3, 4, 5, 6, 7),
        (
            Arrow("a1", 1, 2),
            Arrow("a2", 2, 3),
            Arrow("a3", 3, 4),
            Arrow("a4", 4, 1),
            Arrow("a5", 6, 4),
            Arrow("a6", 4, 5),
            Arrow("a7", 5, 7),
        ),
    )
    rels = [
        make_path(q, ["a1", "a2"]),
        make_path(q, ["a2", "a3"]),
        make_path(q, ["a3", "a4"]),
        make_path(q, ["a4", "a1"]),
        make_path(q, ["a5", "a6"]),
        make_path(q, ["a6", "a7"]),
    ]
    return build_algebra(field, q, rels)


def example_partition() -> dict:
    part = {v: "S" for v in (1, 2, 3, 4, 5, 6)}
    part[7] = "R"
    return part


def example_setup(field: Field = GF2) -> TriangularSetup:
    return build_setup(point_algebra(field), hexagon_algebra(field), glued_algebra(field), example_partition())


def loop_setup(field: Field = GF2) -> TriangularSetup:
    """A gluing whose connecting functor fails exactness: R = k[x]/(x^2), M = its simple."""
    r = loop_algebra(field)  # vertex 1 carries the loop
    s_q = Quiver((0,), ())
    s = build_algebra(field, s_q, [])
    lam_q = Quiver((0, 1), (Arrow("x", 1, 1), Arrow("c", 0, 1)))
    lam = build_algebra(
        field, lam_q, [make_path(lam_q, ["x", "x"]), make_path(lam_q, ["c", "x"])]
    )
    return build_setup(r, s, lam, {0: "S", 1: "R"})


# --- text specs for the CLI ------------------------------------------------

HEXAGON_SPEC = """\
# bundled example: the 14-dimensional gentle algebra on six vertices
field GF(2)
vertex 1
vertex 2
vertex 3
vertex 4
vertex 5
vertex 6
arrow a1: 1 -> 2
arrow a2: 2 -> 3
arrow a3: 3 -> 4
arrow a4: 4 -> 1
arrow a5: 6 -> 4
arrow a6: 4 -> 5
relation a1 a2
relation a2 a3
relation a3 a4
relation a4 a1
relation a5 a6
"""

GLUED_SPEC = """\
# bundled example: the 16-dimensional gluing with cross arrow a7
field GF(2)
vertex 1
vertex 2
vertex 3
vertex 4
vertex 5
vertex 6
vertex 7
arrow a1: 1 -> 2
arrow a2: 2 -> 3
arrow a3: 3 -> 4
arrow a4: 4 -> 1
arrow a5: 6 -> 4
arrow a6: 4 -> 5
arrow a7: 5 -> 7
relation a1 a2
relation a2 a3
relation a3 a4
relation a4 a1
relation a5 a6
relation a6 a7
"""

POINT_SPEC = """\
# bundled example: the ground field as a one-point algebra
field GF(2)
vertex 7
"""

PARTITION_SPEC = """\
# bundled example: side assignment for the gluing
S 1 2 3 4 5 6
R 7
"""

A2_SPEC = """\
field GF(2)
vertex 1
vertex 2
arrow a: 1 -> 2
"""
