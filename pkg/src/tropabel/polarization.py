"""Polarizations on complex tori: Riemann relations, duality, type invariants.

A torus is described by the period matrix (I Z); the polarization Q lives on
the rank-4 lattice in block shape ((0, C), (-C^T, T)).  The dual form in
homology is Pf(Q) Q^{-1} = ((-T, B), (-B^T, 0)) with B the comatrix of C.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    CMat2,
    CRAT_I,
    CRat,
    IMat2,
    SkewForm,
    as_crat,
    comatrix,
    det2,
    is_pos_def_herm,
    m_conjT,
    m_crat,
    m_map,
    m_mul,
    m_rat,
    m_smul,
    m_sub,
    m_T,
    mat4_inv,
    pfaffian,
)
from .errors import SingularMatrixError


@dataclass(frozen=True)
class PeriodData:
    """Period matrix data: the torus C^2 / (I Z) with Z over CRat."""

    Z: CMat2

    def __post_init__(self):
        object.__setattr__(self, "Z", m_crat(self.Z))
        y = m_map(lambda z: z.im, self.Z)
        if det2(y) == 0:
            raise SingularMatrixError("imaginary part of Z must be invertible")


@dataclass(frozen=True)
class PoincareDual:
    """Block content of Pf(Q) Q^{-1}: upper-left -T, upper-right B."""

    T: IMat2
    B: IMat2


def _det3(r):
    (a, b, c), (d, e, f), (g, h, i) = r
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _adjugate4(m):
    """Integer adjugate: adjugate(m) * m = det(m) * I."""
    adj = [[0] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            minor = tuple(
                tuple(m[r][c] for c in range(4) if c != j)
                for r in range(4)
                if r != i
            )
            adj[j][i] = (-1) ** (i + j) * _det3(minor)
    return tuple(tuple(row) for row in adj)


def dual4(q: SkewForm):
    """Pf(Q) Q^{-1} as an exact integer 4x4 matrix.

    Computed through the adjugate: det Q = Pf(Q)^2, so Pf(Q) Q^{-1} is the
    adjugate divided by the Pfaffian, and the division is exact.
    """
    if det2(q.C) == 0:
        raise SingularMatrixError("polarization block C must be invertible")
    pf = pfaffian(q)
    adj = _adjugate4(q.assemble())
    assert all(x % pf == 0 for row in adj for x in row)
    return tuple(tuple(x // pf for x in row) for row in adj)


def poincare_dual(q: SkewForm) -> PoincareDual:
    """Upper blocks of Pf(Q) Q^{-1}; B equals the comatrix of C."""
    d = dual4(q)
    t_block = ((-d[0][0], -d[0][1]), (-d[1][0], -d[1][1]))
    b_block = ((d[0][2], d[0][3]), (d[1][2], d[1][3]))
    assert b_block == comatrix(q.C)
    assert t_block == q.T_block
    assert d[2][2] == d[2][3] == d[3][2] == d[3][3] == 0
    return PoincareDual(T=t_block, B=b_block)


def _omega(z: CMat2):
    """The 2x4 period matrix (I Z) over CRat."""
    one, zero = as_crat(1), as_crat(0)
    return (
        (one, zero, z[0][0], z[0][1]),
        (zero, one, z[1][0], z[1][1]),
    )


def _omega_product(z: CMat2, q4_inv, conjugate_right: bool):
    om = _omega(z)
    right = _omega(z)
    if conjugate_right:
        right = tuple(tuple(x.conjugate() for x in row) for row in right)
    mid = tuple(
        tuple(sum((om[i][k] * q4_inv[k][j] for k in range(4)), as_crat(0)) for j in range(4))
        for i in range(2)
    )
    return tuple(
        tuple(sum((mid[i][k] * right[j][k] for k in range(4)), as_crat(0)) for j in range(2))
        for i in range(2)
    )


def riemann_relations(p: PeriodData, q: SkewForm) -> tuple[bool, bool]:
    """Evaluate both Riemann bilinear relations exactly.

    Returns (first_holds, second_holds).  The intrinsic 4x4 evaluation and the
    reduced block-form evaluation are both computed and must agree; a mismatch
    is a bug, not an input error.
    """
    if det2(q.C) == 0:
        raise SingularMatrixError("polarization block C must be invertible")
    q4_inv = mat4_inv(q.assemble())
    z = m_crat(p.Z)

    first_raw = _omega_product(z, q4_inv, conjugate_right=False)
    first = all(first_raw[i][j] == as_crat(0) for i in range(2) for j in range(2))

    herm = _omega_product(z, q4_inv, conjugate_right=True)
    minus_i = CRat.of(0, -1)
    herm = tuple(tuple(minus_i * x for x in row) for row in herm)
    try:
        second = is_pos_def_herm(herm)
    except Exception:
        second = False

    # reduced forms through the dual blocks
    b = m_crat(comatrix(q.C))
    t = m_crat(q.T_block)
    zt, zbar_t = m_T(z), m_conjT(z)
    first_red = m_sub(m_sub(m_mul(b, zt), m_mul(z, m_T(b))), t)
    first2 = all(first_red[i][j] == as_crat(0) for i in range(2) for j in range(2))
    red = m_sub(m_sub(m_mul(b, zbar_t), m_mul(z, m_T(b))), t)
    pf = pfaffian(q)
    red = m_smul(minus_i * as_crat(pf), red)
    try:
        second2 = is_pos_def_herm(red)
    except Exception:
        second2 = False

    assert first == first2, "intrinsic and reduced first relations disagree"
    assert second == second2, "intrinsic and reduced second relations disagree"
    return first, second


def check_riemann(p: PeriodData, q: SkewForm) -> bool:
    """True iff Q is a polarization of the torus with period matrix (I Z)."""
    first, second = riemann_relations(p, q)
    return first and second


def divisibility4(q: SkewForm) -> int:
    """gcd of the entries of the assembled skew form."""
    entries = [abs(x) for row in q.assemble() for x in row]
    return math.gcd(*entries)


def polarization_type(q: SkewForm) -> tuple[int, int]:
    """(d1, d2) with d1 the entry gcd and d1*d2 = |Pf(Q)|; d1 divides d2."""
    if det2(q.C) == 0:
        raise SingularMatrixError("polarization block C must be invertible")
    d1 = divisibility4(q)
    pf = abs(pfaffian(q))
    if pf % d1 != 0:
        raise SingularMatrixError(f"divisibility {d1} does not divide |Pf| = {pf}")
    d2 = pf // d1
    if d2 % d1 != 0:
        # d1^2 divides the Pfaffian because Pf is quadratic in the entries
        raise AssertionError(f"type invariant violated: {d1} does not divide {d2}")
    return d1, d2
