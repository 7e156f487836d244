"""Mumford degenerations of polarized tori and curve realizability.

A family is described by (Z, S): the fiber over t has period matrix
(I, Z + S log t / 2 i pi).  Every predicate here works on the t-free
reformulation, so the parameter never needs to be materialized: the
polarization criterion splits into a block-form condition, a tropical
positivity condition, and the two Riemann conditions on Z itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    CMat2,
    CRat,
    IMat2,
    RMat2,
    SkewForm,
    as_crat,
    comatrix,
    det2,
    is_integral,
    is_pos_def_herm,
    is_pos_def_sym,
    m_conjT,
    m_crat,
    m_map,
    m_mul,
    m_rat,
    m_smul,
    m_sub,
    m_T,
    mat4_inv,
    pfaffian4,
)
from .curve import ParamCurve, curve_gcd, degree
from .errors import (
    DegenerateDegreeError,
    DegreeMismatchError,
    InvalidCurveError,
    NonIntegralExponentsError,
    NoTropicalPolarizationError,
    SingularMatrixError,
)
from .polarization import PeriodData, check_riemann

CONDITION_BLOCK_FORM = "dual_block_form"
CONDITION_TROPICAL = "tropical_polarization"
CONDITION_SCALAR = "riemann_scalar"
CONDITION_POSITIVITY = "riemann_positivity"


@dataclass(frozen=True)
class FamilyCheck:
    ok: bool
    failures: tuple[str, ...]


def riemann_scalar(B: IMat2, Z: CMat2) -> CRat:
    """Upper-right entry of B Z^T - Z B^T."""
    z = m_crat(Z)
    return (
        z[1][0] * B[0][0]
        + z[1][1] * B[0][1]
        - z[0][0] * B[1][0]
        - z[0][1] * B[1][1]
    )


def _blocks4(q4):
    ul = ((q4[0][0], q4[0][1]), (q4[1][0], q4[1][1]))
    ur = ((q4[0][2], q4[0][3]), (q4[1][2], q4[1][3]))
    lr = ((q4[2][2], q4[2][3]), (q4[3][2], q4[3][3]))
    return ul, ur, lr


def check_family_polarization4(Z: CMat2, S: RMat2, q4) -> FamilyCheck:
    """Polarization criterion for a general integer skew 4x4 form.

    Conditions reported separately: block form of the form and its dual,
    tropical positivity of B S^T, the scalar Riemann condition and the
    positivity Riemann condition.
    """
    for i in range(4):
        for j in range(4):
            if q4[i][j] != -q4[j][i]:
                raise ValueError("form must be skew-symmetric")
    ul, c_block, t_block = _blocks4(q4)
    if det2(c_block) == 0:
        raise SingularMatrixError("upper-right block C must be invertible")
    failures = []

    pf = pfaffian4(q4)
    inv = mat4_inv(q4)
    dual = tuple(tuple(pf * x for x in row) for row in inv)
    block_ok = (
        ul == ((0, 0), (0, 0))
        and all(dual[i][j] == 0 for i in (2, 3) for j in (2, 3))
        and tuple(tuple(dual[i][j + 2] for j in range(2)) for i in range(2))
        == m_rat(comatrix(c_block))
    )
    if not block_ok:
        failures.append(CONDITION_BLOCK_FORM)

    b = comatrix(c_block)
    s = m_rat(S)
    bst = m_mul(m_rat(b), m_T(s))
    try:
        tropical_ok = is_pos_def_sym(bst)
    except Exception:
        tropical_ok = False
    if not tropical_ok:
        failures.append(CONDITION_TROPICAL)

    z = m_crat(Z)
    bc = m_crat(b)
    first = m_sub(m_sub(m_mul(bc, m_T(z)), m_mul(z, m_T(bc))), m_crat(t_block))
    zero = as_crat(0)
    if not all(first[i][j] == zero for i in range(2) for j in range(2)):
        failures.append(CONDITION_SCALAR)

    herm = m_sub(m_sub(m_mul(bc, m_conjT(z)), m_mul(z, m_T(bc))), m_crat(t_block))
    herm = m_smul(CRat.of(0, -1) * as_crat(pf), herm)
    try:
        pos_ok = is_pos_def_herm(herm)
    except Exception:
        pos_ok = False
    if not pos_ok:
        failures.append(CONDITION_POSITIVITY)

    return FamilyCheck(ok=not failures, failures=tuple(failures))


def check_family_polarization(Z: CMat2, S: RMat2, q: SkewForm) -> FamilyCheck:
    """Polarization criterion for a block-form skew form."""
    result = check_family_polarization4(Z, S, q.assemble())
    # cross-validate against the intrinsic Riemann relations when they apply
    y = m_map(lambda v: v.im, m_crat(Z))
    if det2(y) != 0:
        riemann_ok = check_riemann(PeriodData(Z), q)
        reduced_ok = not (
            CONDITION_SCALAR in result.failures
            or CONDITION_POSITIVITY in result.failures
        )
        assert riemann_ok == reduced_ok, "block reduction disagrees with Riemann"
    return result


_SCAN = (
    (lambda b: b[0][0], (1, 0)),
    (lambda b: b[0][1], (1, 1)),
    (lambda b: -b[1][0], (0, 0)),
    (lambda b: -b[1][1], (0, 1)),
)


def build_Z(B: IMat2, tau: int, S: RMat2) -> CMat2:
    """Canonical period matrix Z = X + iS solving the scalar condition.

    The first position in the fixed scan order whose coefficient in the
    scalar condition is nonzero receives tau / coefficient; every other
    entry of X is zero.
    """
    s = m_rat(S)
    bst = m_mul(m_rat(B), m_T(s))
    try:
        ok = is_pos_def_sym(bst)
    except Exception:
        ok = False
    if not ok:
        raise NoTropicalPolarizationError(f"B S^T = {bst} is not symmetric positive definite")
    x = [[Fraction(0), Fraction(0)], [Fraction(0), Fraction(0)]]
    for coeff_of, (i, j) in _SCAN:
        coeff = coeff_of(B)
        if coeff != 0:
            x[i][j] = Fraction(tau, coeff)
            break
    else:
        raise DegenerateDegreeError("all scalar-condition coefficients vanish")
    z = tuple(
        tuple(CRat(x[i][j], s[i][j]) for j in range(2)) for i in range(2)
    )
    check = check_family_polarization(z, S, SkewForm(C=comatrix(B), tau=tau))
    assert check.ok, f"constructed Z fails the criterion: {check.failures}"
    return z


@dataclass(frozen=True)
class SigmaExponent:
    """Exact exponent w with sigma = e^{2 i pi w}."""

    value: CRat

    def is_one(self) -> bool:
        return self.value.is_real and self.value.re.denominator == 1


def sigma(Z: CMat2, B: IMat2, delta: int) -> SigmaExponent:
    """Phase exponent of the realizability condition for gcd delta.

    Defined when delta divides B entrywise; the exponent is the scalar
    Riemann value divided by delta.
    """
    if delta < 1:
        raise ValueError("delta must be positive")
    if any(B[i][j] % delta for i in range(2) for j in range(2)):
        raise NonIntegralExponentsError(f"{delta} does not divide {B} entrywise")
    return SigmaExponent(riemann_scalar(B, Z) / delta)


@dataclass(frozen=True)
class MumfordFamily:
    """Polarized family (Z, S) with integral S and twist tau."""

    Z: CMat2
    S: RMat2
    tau: int
    Q: SkewForm

    def __post_init__(self):
        object.__setattr__(self, "Z", m_crat(self.Z))
        object.__setattr__(self, "S", m_rat(self.S))
        if not is_integral(self.S):
            raise ValueError("family lattice matrix must be integral")
        if det2(self.S) <= 0:
            raise SingularMatrixError("family lattice matrix needs det > 0")
        check = check_family_polarization(self.Z, self.S, self.Q)
        if not check.ok:
            raise ValueError(f"not a polarized family: {check.failures}")

    @property
    def B(self) -> IMat2:
        return comatrix(self.Q.C)

    @staticmethod
    def build(B: IMat2, tau: int, S: RMat2) -> "MumfordFamily":
        z = build_Z(B, tau, S)
        return MumfordFamily(Z=z, S=S, tau=tau, Q=SkewForm(C=comatrix(B), tau=tau))


def is_realizable(pc: ParamCurve, fam: MumfordFamily) -> bool:
    """Whether the tropical curve lifts to the family: sigma(Z, B, gcd) = 1."""
    b = degree(pc)
    if b != fam.B:
        raise DegreeMismatchError(f"curve degree {b} is not the family degree {fam.B}")
    return sigma(fam.Z, b, curve_gcd(pc)).is_one()
