"""Tropical tori R^2 / Lambda, tropical polarizations and point configurations."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    IMat2,
    RMat2,
    comatrix,
    det2,
    is_pos_def_sym,
    m_inv,
    m_mul,
    m_rat,
    m_T,
)
from .errors import NotSymmetricError, SingularMatrixError

Vec2 = tuple[Fraction, Fraction]

SAMPLE_DENOMINATOR = 10007  # fixed large prime for pseudo-generic coordinates


@dataclass(frozen=True)
class TropicalTorus:
    """R^2 / Lambda with Lambda spanned by the columns of S; det S > 0."""

    S: RMat2

    def __post_init__(self):
        object.__setattr__(self, "S", m_rat(self.S))
        if det2(self.S) <= 0:
            raise SingularMatrixError("torus matrix must have positive determinant")

    def lattice_coords(self, p: Vec2) -> Vec2:
        """Coordinates of an ambient point in the Lambda basis."""
        inv = m_inv(self.S)
        return (
            inv[0][0] * p[0] + inv[0][1] * p[1],
            inv[1][0] * p[0] + inv[1][1] * p[1],
        )

    def ambient(self, y: Vec2) -> Vec2:
        s = self.S
        return (
            s[0][0] * y[0] + s[0][1] * y[1],
            s[1][0] * y[0] + s[1][1] * y[1],
        )

    def lattice_point(self, v: tuple[int, int]) -> Vec2:
        return self.ambient((Fraction(v[0]), Fraction(v[1])))


@dataclass(frozen=True)
class TorusPoint:
    """Canonical representative inside the fundamental parallelogram."""

    coords: Vec2


@dataclass(frozen=True)
class PointConfig:
    points: tuple[TorusPoint, ...]
    seed: int


def reduce_point(t: TropicalTorus, raw) -> TorusPoint:
    """Canonical representative of an ambient point, reduced mod Lambda."""
    raw = (Fraction(raw[0]), Fraction(raw[1]))
    y = t.lattice_coords(raw)
    y = tuple(c - math.floor(c) for c in y)
    return TorusPoint(t.ambient(y))


def check_tropical_polarization(t: TropicalTorus, C: IMat2) -> bool:
    """True iff S^T C is symmetric and positive definite."""
    m = m_mul(m_T(t.S), m_rat(C))
    try:
        return is_pos_def_sym(m)
    except NotSymmetricError:
        return False


def degree_polarization_duality(m: IMat2) -> IMat2:
    """Comatrix, mediating between curve degree B and polarization C.

    Involution: applying it twice returns the input.
    """
    return comatrix(m)


def sample_config(t: TropicalTorus, g: int, seed: int) -> PointConfig:
    """g distinct pseudo-random points, deterministic in the seed.

    Coordinates are drawn in the Lambda basis with the fixed prime
    denominator, so configurations are generic for exact solvers; residual
    degeneracy downstream is reported, never repaired.
    """
    if g < 1:
        raise ValueError("need at least one point")
    rng = random.Random(seed)
    points: list[TorusPoint] = []
    seen = set()
    while len(points) < g:
        y = (
            Fraction(rng.randrange(SAMPLE_DENOMINATOR), SAMPLE_DENOMINATOR),
            Fraction(rng.randrange(SAMPLE_DENOMINATOR), SAMPLE_DENOMINATOR),
        )
        p = TorusPoint(t.ambient(y))
        if p.coords in seen:
            continue
        seen.add(p.coords)
        points.append(p)
    return PointConfig(points=tuple(points), seed=seed)
