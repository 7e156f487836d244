from fractions import Fraction

import pytest

from tropabel.combtypes import generate_comb_types, trivalent_base_graphs
from tropabel.curve import validate
from tropabel.enumeration import (
    SearchBounds,
    certify_bounds_stability,
    default_bounds,
    enumerate_curves,
    stratum_bijection_check,
    tropical_invariant,
)
from tropabel.errors import (
    DegenerateDegreeError,
    NoTropicalPolarizationError,
    UnsupportedGenusError,
)
from tropabel.surface import TropicalTorus, sample_config

import bruteforce

S_STD = ((Fraction(3), Fraction(1)), (Fraction(1), Fraction(2)))
B22 = ((2, 0), (0, 2))
I2 = ((1, 0), (0, 1))


def std_torus():
    return TropicalTorus(S=S_STD)


# ---------------------------------------------------------------- comb types


def test_genus1_single_type():
    types = generate_comb_types(1)
    assert len(types) == 1
    ct = types[0]
    assert ct.num_vertices == 1
    assert ct.edges == ((0, 0),)
    assert ct.num_legs == 1


def test_genus2_base_graphs():
    graphs = trivalent_base_graphs(2)
    assert len(graphs) == 2
    assert tuple(sorted(graphs)) == (
        ((0, 0), (0, 1), (1, 1)),  # dumbbell
        ((0, 1), (0, 1), (0, 1)),  # theta
    )


def test_genus2_marked_types():
    types = generate_comb_types(2)
    assert len(types) == 7
    for ct in types:
        assert ct.genus == 2
        assert len(ct.edges) == 4 * 2 - 3
        assert ct.num_vertices == 4


def test_genus3_types_have_expected_shape():
    assert len(trivalent_base_graphs(3)) == 5
    types = generate_comb_types(3)
    assert len(types) > 100
    for ct in types:
        assert ct.genus == 3
        assert len(ct.edges) == 9


def test_marked_types_pairwise_distinct_under_relabeling():
    # brute isomorphism oracle: relabeling the free vertices of any type
    # never reproduces a different type
    import itertools

    types = generate_comb_types(2)
    canon = []
    for ct in types:
        forms = set()
        for perm in itertools.permutations(range(2, 4)):
            mapping = {0: 0, 1: 1, 2: perm[0], 3: perm[1]}
            forms.add(
                tuple(
                    sorted(
                        (min(mapping[u], mapping[v]), max(mapping[u], mapping[v]))
                        for u, v in ct.edges
                    )
                )
            )
        canon.append(forms)
    for i in range(len(types)):
        for j in range(i + 1, len(types)):
            assert not (canon[i] & canon[j])


def test_unsupported_genus():
    with pytest.raises(UnsupportedGenusError):
        generate_comb_types(4)
    with pytest.raises(UnsupportedGenusError):
        generate_comb_types(0)


# ---------------------------------------------------------------- enumeration


def test_default_bounds():
    assert default_bounds(B22) == SearchBounds(3, 2)
    assert default_bounds(((2, 1), (0, 1))) == SearchBounds(3, 2)


def test_enumerate_preconditions():
    t = std_torus()
    cfg = sample_config(t, 2, 1)
    with pytest.raises(DegenerateDegreeError):
        enumerate_curves(t, ((1, 0), (0, -1)), 2, cfg)
    with pytest.raises(NoTropicalPolarizationError):
        enumerate_curves(t, ((0, 1), (-1, 0)), 2, cfg)
    with pytest.raises(ValueError):
        enumerate_curves(t, B22, 2, sample_config(t, 1, 1))


def test_genus1_enumeration_empty_and_matches_bruteforce():
    # a rank-two degree admits no genus-1 curve: circles have rank-one degree
    t = TropicalTorus(S=I2)
    cfg = sample_config(t, 1, 1)
    for sb in (1, 2):
        res = enumerate_curves(t, I2, 1, cfg, SearchBounds(sb, 2), jobs=1)
        assert res.curves == ()
        assert tropical_invariant(res, 1) == 0
        brute = bruteforce.brute_genus1(t, I2, cfg.points[0], sb, 2)
        assert brute == {}


def test_genus2_matches_bruteforce():
    t = std_torus()
    cfg = sample_config(t, 2, 1)
    bounds = SearchBounds(2, 3)
    res = enumerate_curves(t, B22, 2, cfg, bounds, jobs=1)
    brute = bruteforce.brute_genus2_theta(t, B22, cfg.points, 2, 3)
    assert set(res.keys) == set(brute)
    for key, (pc, mult) in zip(res.keys, res.curves):
        assert validate(pc) == []
        assert brute[key][1] == mult.total


def test_genus2_matches_bruteforce_other_degree_and_seed():
    t = TropicalTorus(S=((Fraction(3), Fraction(1)), (Fraction(2), Fraction(2))))
    b = ((1, 0), (0, 2))
    cfg = sample_config(t, 2, 7)
    res = enumerate_curves(t, b, 2, cfg, SearchBounds(2, 3), jobs=1)
    brute = bruteforce.brute_genus2_theta(t, b, cfg.points, 2, 3)
    assert set(res.keys) == set(brute)
    assert sum(m.total for _, m in res.curves) == sum(
        m for _, m in brute.values()
    )


def test_enumeration_results_validate_and_partition():
    t = std_torus()
    cfg = sample_config(t, 2, 3)
    res = enumerate_curves(t, B22, 2, cfg, jobs=1)
    total = sum(len(v) for v in res.by_gcd.values())
    assert total == len(res.curves)
    assert set(res.by_gcd).issubset({1, 2})
    for pc, mult in res.curves:
        assert validate(pc) == []
        assert mult.total >= 1


def test_determinism_across_jobs():
    t = std_torus()
    cfg = sample_config(t, 2, 1)
    res1 = enumerate_curves(t, B22, 2, cfg, jobs=1)
    res4 = enumerate_curves(t, B22, 2, cfg, jobs=4)
    assert res1.keys == res4.keys
    assert [m.total for _, m in res1.curves] == [m.total for _, m in res4.curves]
    assert res1.by_gcd == res4.by_gcd


def test_invariant_independent_of_seed():
    t = std_torus()
    values = []
    for seed in (1, 2, 3):
        cfg = sample_config(t, 2, seed)
        res = enumerate_curves(t, B22, 2, cfg, jobs=1)
        values.append((tropical_invariant(res, 1), tropical_invariant(res, 2)))
    assert len(set(values)) == 1


def test_invariant_rejects_bad_stratum():
    t = std_torus()
    cfg = sample_config(t, 2, 1)
    res = enumerate_curves(t, B22, 2, cfg, jobs=1)
    with pytest.raises(ValueError):
        tropical_invariant(res, 3)
    assert tropical_invariant(res, 2) >= 0


def test_bounds_stability_certificate():
    t = std_torus()
    cfg = sample_config(t, 2, 1)
    res = certify_bounds_stability(t, B22, 2, cfg, SearchBounds(4, 2), jobs=1)
    assert res.bounds_stable is True


def test_stratum_bijection():
    t = std_torus()
    cfg = sample_config(t, 2, 1)
    big = enumerate_curves(t, B22, 2, cfg, SearchBounds(4, 2), jobs=1)
    small = enumerate_curves(t, I2, 2, cfg, SearchBounds(2, 2), jobs=1)
    rep = stratum_bijection_check(big, small, 2)
    assert rep.ok
    assert rep.factor == 32
    assert rep.matched == len(small.by_gcd.get(1, ()))
    trivial = stratum_bijection_check(big, big, 1)
    assert trivial.ok
