"""Exact arithmetic kernel: rationals, complex rationals, small dense matrices.

Everything is exact. No floating point enters any predicate; positivity is
decided by Sylvester minors over the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import NotHermitianError, NotSymmetricError, SingularMatrixError

Rat = Fraction

RatLike = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class CRat:
    """Complex number with rational real and imaginary parts."""

    re: Fraction
    im: Fraction

    @staticmethod
    def of(re: RatLike = 0, im: RatLike = 0) -> "CRat":
        return CRat(_frac(re), _frac(im))

    def __add__(self, other):
        other = as_crat(other)
        return CRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_crat(other)
        return CRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return as_crat(other) - self

    def __mul__(self, other):
        other = as_crat(other)
        return CRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_crat(other)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero CRat")
        return CRat(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __neg__(self):
        return CRat(-self.re, -self.im)

    def conjugate(self) -> "CRat":
        return CRat(self.re, -self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"CRat({self.re}, {self.im})"


CRAT_ZERO = CRat(Fraction(0), Fraction(0))
CRAT_ONE = CRat(Fraction(1), Fraction(0))
CRAT_I = CRat(Fraction(0), Fraction(1))


def as_crat(x) -> CRat:
    if isinstance(x, CRat):
        return x
    if isinstance(x, (int, Fraction)):
        return CRat(_frac(x), Fraction(0))
    raise TypeError(f"cannot interpret {type(x).__name__} as CRat")


# 2x2 matrices are plain row-major nested tuples; the helpers below are
# generic over int / Fraction / CRat entries.

IMat2 = tuple[tuple[int, int], tuple[int, int]]
RMat2 = tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]
CMat2 = tuple[tuple[CRat, CRat], tuple[CRat, CRat]]

IDENTITY2: IMat2 = ((1, 0), (0, 1))
ZERO2: IMat2 = ((0, 0), (0, 0))


def mat2(a, b, c, d):
    return ((a, b), (c, d))


def m_add(x, y):
    return tuple(tuple(x[i][j] + y[i][j] for j in range(2)) for i in range(2))


def m_sub(x, y):
    return tuple(tuple(x[i][j] - y[i][j] for j in range(2)) for i in range(2))


def m_neg(x):
    return tuple(tuple(-x[i][j] for j in range(2)) for i in range(2))


def m_smul(s, x):
    return tuple(tuple(s * x[i][j] for j in range(2)) for i in range(2))


def m_mul(x, y):
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2))
        for i in range(2)
    )


def m_T(x):
    return ((x[0][0], x[1][0]), (x[0][1], x[1][1]))


def m_conjT(x: CMat2) -> CMat2:
    return (
        (x[0][0].conjugate(), x[1][0].conjugate()),
        (x[0][1].conjugate(), x[1][1].conjugate()),
    )


def m_map(f, x):
    return tuple(tuple(f(x[i][j]) for j in range(2)) for i in range(2))


def m_rat(x) -> RMat2:
    return m_map(_frac, x)


def m_crat(x) -> CMat2:
    return m_map(as_crat, x)


def det2(m) -> int:
    """Determinant of a 2x2 matrix."""
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def m_inv(m) -> RMat2:
    d = det2(m)
    if d == 0:
        raise SingularMatrixError("2x2 matrix is singular")
    d = _frac(d) if not isinstance(d, Fraction) else d
    return (
        (m[1][1] / d, -m[0][1] / d),
        (-m[1][0] / d, m[0][0] / d),
    )


def comatrix(m: IMat2) -> IMat2:
    """(det m)(m^-1)^T, the adjugate transpose; integer for integer input.

    For ((a,b),(c,d)) this is ((d,-c),(-b,a)).  Satisfies
    comatrix(m)^T * m = det(m) * I and is an involution on invertible
    integer 2x2 matrices.
    """
    if det2(m) == 0:
        raise SingularMatrixError("comatrix requires det != 0")
    (a, b), (c, d) = m
    return ((d, -c), (-b, a))


def is_integral(m) -> bool:
    return all(_frac(m[i][j]).denominator == 1 for i in range(2) for j in range(2))


def m_int(m) -> IMat2:
    return tuple(tuple(int(_frac(m[i][j])) for j in range(2)) for i in range(2))


@dataclass(frozen=True)
class SkewForm:
    """Integer skew form on Z^2 + Lambda in block shape ((0, C), (-C^T, T)).

    T is the skew 2x2 with upper-right entry tau.  The basis order of the
    assembled 4x4 matrix is (e1, e2, lambda1, lambda2).
    """

    C: IMat2
    tau: int

    @property
    def T_block(self) -> IMat2:
        return ((0, self.tau), (-self.tau, 0))

    def assemble(self):
        """The full 4x4 integer matrix."""
        C, T = self.C, self.T_block
        Ct = m_T(C)
        return (
            (0, 0, C[0][0], C[0][1]),
            (0, 0, C[1][0], C[1][1]),
            (-Ct[0][0], -Ct[0][1], T[0][0], T[0][1]),
            (-Ct[1][0], -Ct[1][1], T[1][0], T[1][1]),
        )


def pfaffian(q: SkewForm) -> int:
    """Pfaffian of the assembled form; equals -det(C) in this basis order."""
    return -det2(q.C)


def pfaffian4(m) -> int:
    """Classical Pfaffian of a 4x4 skew-symmetric matrix."""
    return m[0][1] * m[2][3] - m[0][2] * m[1][3] + m[0][3] * m[1][2]


def det4(m):
    """Determinant of a 4x4 matrix by cofactor expansion, exact."""

    def det3(rows):
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    total = 0
    sign = 1
    for j in range(4):
        minor = tuple(
            tuple(m[i][k] for k in range(4) if k != j) for i in range(1, 4)
        )
        total = total + sign * m[0][j] * det3(minor)
        sign = -sign
    return total


def mat4_mul(x, y):
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(4)) for j in range(4))
        for i in range(4)
    )


def mat4_inv(m):
    """Exact inverse of a 4x4 matrix over the rationals."""
    n = 4
    a = [[_frac(m[i][j]) for j in range(n)] for i in range(n)]
    b = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("4x4 matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        b[col], b[piv] = b[piv], b[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        b[col] = [x * inv for x in b[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                b[r] = [x - f * y for x, y in zip(b[r], b[col])]
    return tuple(tuple(row) for row in b)


def is_pos_def_sym(m: RMat2) -> bool:
    """Sylvester test for a symmetric rational 2x2 matrix."""
    m = m_rat(m)
    if m[0][1] != m[1][0]:
        raise NotSymmetricError(f"matrix {m} is not symmetric")
    return m[0][0] > 0 and det2(m) > 0


def is_pos_def_herm(m: CMat2) -> bool:
    """Sylvester test for a hermitian 2x2 matrix over CRat."""
    m = m_crat(m)
    if not (
        m[0][0].is_real
        and m[1][1].is_real
        and m[1][0] == m[0][1].conjugate()
    ):
        raise NotHermitianError(f"matrix {m} is not hermitian")
    d = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    assert d.is_real
    return m[0][0].re > 0 and d.re > 0


def solve_affine(rows, rhs):
    """Full solution set of an exact linear system.

    Returns (consistent, particular, null_basis): the particular solution has
    zeros in the free coordinates and null_basis spans the kernel, one vector
    per free column.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[_frac(x) for x in row] + [_frac(r)] for row, r in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            return False, None, None
    particular = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        particular[c] = a[i][n]
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * n
        vec[free] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -a[i][free]
        basis.append(tuple(vec))
    return True, tuple(particular), basis


def solve_linear(rows, rhs):
    """Solve an exact linear system given as (m x n matrix, m-vector).

    Returns ("unique", solution), ("none", None) or ("many", None).
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [[_frac(x) for x in row] + [_frac(r)] for row, r in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] != 0:
            return "none", None
    if len(pivots) < n:
        return "many", None
    sol = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        sol[c] = a[i][n]
    return "unique", tuple(sol)
