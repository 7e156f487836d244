from fractions import Fraction

import pytest

from tropabel.enumeration import (
    SearchBounds,
    certify_bounds_stability,
    enumerate_curves,
    tropical_invariant,
)
from tropabel.errors import (
    BoundsUnstableError,
    DegreeMismatchError,
    MissingPrimitiveValueError,
)
from tropabel.multicover import complex_count, mc_rhs, verify_multiple_cover
from tropabel.mumford import MumfordFamily
from tropabel.surface import TropicalTorus, sample_config

S_STD = ((Fraction(3), Fraction(1)), (Fraction(1), Fraction(2)))
B22 = ((2, 0), (0, 2))


def test_mc_rhs_single_divisor():
    assert mc_rhs(2, 1, 5, {5: 7}) == 7


def test_mc_rhs_two_divisors():
    # genus 2: k^(4g-3) = k^5, so the k=2 term carries 32
    primitive = {4: 40, 1: 2}
    assert mc_rhs(2, 2, 1, primitive) == 40 + 32 * 2


def test_mc_rhs_three_divisors():
    primitive = {16: 1, 4: 10, 1: 100}
    assert mc_rhs(2, 4, 1, primitive) == 1 + 32 * 10 + 1024 * 100


def test_mc_rhs_missing_value():
    with pytest.raises(MissingPrimitiveValueError):
        mc_rhs(2, 2, 1, {4: 40})


def test_complex_count_requires_stability():
    t = TropicalTorus(S=S_STD)
    cfg = sample_config(t, 2, 1)
    res = enumerate_curves(t, B22, 2, cfg, jobs=1)
    fam = MumfordFamily.build(B22, 0, ((3, 1), (1, 2)))
    with pytest.raises(BoundsUnstableError):
        complex_count(res, fam)


def test_complex_count_two_families():
    t = TropicalTorus(S=S_STD)
    cfg = sample_config(t, 2, 1)
    res = certify_bounds_stability(t, B22, 2, cfg, SearchBounds(4, 2), jobs=1)
    untwisted = complex_count(res, MumfordFamily.build(B22, 0, ((3, 1), (1, 2))))
    twisted = complex_count(res, MumfordFamily.build(B22, 1, ((3, 1), (1, 2))))
    strata = {k: tropical_invariant(res, k) for k in (1, 2)}
    assert untwisted.value == strata[1] + strata[2]
    assert twisted.value == strata[1]
    assert untwisted.d == 2 and untwisted.n == 1
    assert untwisted.value == 104


def test_complex_count_degree_mismatch():
    t = TropicalTorus(S=S_STD)
    cfg = sample_config(t, 2, 1)
    res = certify_bounds_stability(t, B22, 2, cfg, SearchBounds(4, 2), jobs=1)
    fam = MumfordFamily.build(((1, 0), (0, 1)), 0, ((3, 1), (1, 2)))
    with pytest.raises(DegreeMismatchError):
        complex_count(res, fam)


def test_verify_trivial_for_primitive_degree():
    t = TropicalTorus(S=((Fraction(3), Fraction(1)), (Fraction(2), Fraction(2))))
    rep = verify_multiple_cover(t, ((1, 0), (0, 2)), 2, seed=1, jobs=1)
    assert rep.d == 1 and rep.n == 2
    assert rep.verdict
    assert list(rep.rhs_terms) == [1]
    assert rep.lhs.value == rep.rhs_total


def test_verify_divisible_degree():
    t = TropicalTorus(S=S_STD)
    rep = verify_multiple_cover(t, B22, 2, seed=1, jobs=1)
    assert rep.verdict and rep.certified
    assert rep.d == 2 and rep.n == 1
    assert rep.lhs.value == rep.rhs_terms[1] + rep.rhs_terms[2]
    assert rep.strata[2] == 32 * rep.primitive[1]
    assert all(rep.bijections.values())
