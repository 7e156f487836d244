"""Worked curve fixtures used across the test suite.

Both curves come from the two standard pictures of tropical curves in a
tropical torus: a degree diag(2,3) curve on the S = ((5,2),(3,5)) torus and
a degree ((2,1),(0,1)) curve with one weight-2 edge on S = ((8,-2),(-4,6)).
Edge data was transcribed segment by segment; lengths solve the cycle
conditions on the stated torus.
"""

from fractions import Fraction

from tropabel.curve import AbstractCurve, Edge, ParamCurve
from tropabel.surface import TropicalTorus


def _pc(s_rows, num_vertices, edge_rows, legs=()):
    torus = TropicalTorus(
        S=tuple(tuple(Fraction(x) for x in row) for row in s_rows)
    )
    edges, slopes, windings = [], [], []
    for u, v, length, slope, winding in edge_rows:
        edges.append(Edge(u, v, Fraction(length)))
        slopes.append(slope)
        windings.append(winding)
    return ParamCurve(
        curve=AbstractCurve(
            num_vertices=num_vertices, edges=tuple(edges), legs=tuple(legs)
        ),
        torus=torus,
        base_vertex=0,
        base_position=(Fraction(0), Fraction(0)),
        slopes=tuple(slopes),
        windings=tuple(windings),
    )


def figure_a_curve() -> ParamCurve:
    """Degree diag(2,3) curve on the alpha=5, beta=5, gamma=1 torus."""
    return _pc(
        [[5, 2], [3, 5]],
        8,
        [
            (0, 1, 1, (1, 1), None),
            (1, 2, 1, (0, 1), None),
            (1, 3, 1, (1, 0), None),
            (3, 4, 2, (1, 1), None),
            (2, 5, 1, (1, 1), None),
            (5, 6, 1, (1, 0), None),
            (6, 7, 2, (1, 1), None),
            (0, 5, 2, (0, -1), (0, -1)),
            (3, 4, 3, (0, -1), (0, -1)),
            (6, 7, 3, (0, -1), (0, -1)),
            (0, 4, 1, (-1, 0), (-1, 0)),
            (2, 7, 1, (-1, 0), (-1, 0)),
        ],
    )


FIGURE_A_DEGREE = ((2, 0), (0, 3))
FIGURE_A_POLARIZATION = ((3, 0), (0, 2))


def figure_b_curve() -> ParamCurve:
    """Degree ((2,1),(0,1)) theta curve with one weight-2 edge."""
    return _pc(
        [[8, -2], [-4, 6]],
        2,
        [
            (0, 1, 4, (1, -1), None),
            (0, 1, 2, (1, 1), (0, 1)),
            (0, 1, 2, (-2, 0), (-1, 0)),
        ],
    )


FIGURE_B_DEGREE = ((2, 1), (0, 1))
FIGURE_B_POLARIZATION = ((1, 0), (-1, 2))


def balanced_theta() -> ParamCurve:
    """Unit theta curve on the square torus; every vertex is unimodular."""
    return _pc(
        [[1, 0], [0, 1]],
        2,
        [
            (0, 1, 1, (1, 0), None),
            (0, 1, 1, (0, 1), (-1, 1)),
            (0, 1, 1, (-1, -1), (-2, -1)),
        ],
    )


def unbalanced_theta() -> ParamCurve:
    return _pc(
        [[1, 0], [0, 1]],
        2,
        [
            (0, 1, 1, (1, 0), None),
            (0, 1, 1, (0, 1), (-1, 1)),
            (0, 1, 1, (-1, 0), (-2, -1)),
        ],
    )


def wide_theta() -> ParamCurve:
    """Theta curve with slopes (2,0),(0,1),(-2,-1); vertex factors 2."""
    return _pc(
        [[1, 0], [0, 1]],
        2,
        [
            (0, 1, 1, (2, 0), None),
            (0, 1, 1, (0, 1), (-2, 1)),
            (0, 1, 1, (-2, -1), (-4, -1)),
        ],
    )
