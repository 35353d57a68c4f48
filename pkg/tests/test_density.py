from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from classize.density import (DensityVerdict, OracleSet, OutpacingVerdict, alternating_pair,
                              density, density_estimate, fract, ladder, oracle, outpaces,
                              outpaces_empirical, relative_density)
from classize.errors import DomainError, ParseError
from classize.periodic import (EMPTY, EVENS, NATURALS, ODDS, PeriodicSet, congruence_class,
                               count_upto, difference, finite_set, intersect, normalize,
                               union)

from conftest import infinite_sets, periodic_sets


def brute_outpaces(x, y, start, period):
    """Strictly more of x than y on a full period past every exception."""
    return all(count_upto(x, m) > count_upto(y, m) for m in range(start, start + 2 * period))


@st.composite
def equal_density_pairs(draw):
    n = draw(st.integers(1, 6))
    b = draw(st.integers(0, n))
    sets = []
    for _ in range(2):
        residues = draw(st.permutations(range(n)))[:b]
        added = draw(st.sets(st.integers(0, 20), max_size=3))
        removed = draw(st.sets(st.integers(0, 20), max_size=3))
        sets.append(normalize(n, residues, added, removed))
    return tuple(sets)


def enumerate_members(x, count):
    out, k = [], 0
    while len(out) < count:
        if k in x:
            out.append(k)
        k += 1
    return out


class TestDensity:
    def test_examples(self):
        assert density(EVENS) == Fraction(1, 2)
        assert density(congruence_class(4, 0)) == Fraction(1, 4)
        assert density(finite_set([1, 5, 9])) == 0
        assert density(EMPTY) == 0

    def test_exceptions_ignored(self):
        assert density(PeriodicSet(3, (1,), (0, 2), (4,))) == Fraction(1, 3)

    def test_relative(self):
        assert relative_density(congruence_class(4, 0), EVENS) == Fraction(1, 2)
        assert relative_density(ODDS, ODDS) == 1
        assert relative_density(congruence_class(6, 0), EVENS) == Fraction(1, 3)

    def test_relative_matches_count_ratio(self):
        x, y = congruence_class(6, 0), EVENS
        ratio = count_upto(x, 10**4) / count_upto(y, 10**4)
        assert abs(ratio - float(relative_density(x, y))) < 1e-2

    def test_relative_errors(self):
        with pytest.raises(DomainError):
            relative_density(ODDS, EVENS)
        with pytest.raises(DomainError):
            relative_density(finite_set([0]), finite_set([0, 2]))

    @settings(max_examples=50)
    @given(periodic_sets())
    def test_limit_of_counts(self, x):
        m = 10**5
        assert abs(float(density(x)) - count_upto(x, m) / (m + 1)) < 1e-3


class TestOutpaces:
    def test_evens_beat_thirds(self):
        assert outpaces(EVENS, congruence_class(3, 0))
        assert not outpaces(congruence_class(3, 0), EVENS)

    def test_evens_and_odds(self):
        assert not outpaces(EVENS, ODDS)
        assert not outpaces(ODDS, EVENS)

    def test_one_extra_point(self):
        assert outpaces(union(ODDS, finite_set([0])), ODDS)
        # one extra odd point ties the evens at every even m >= 10
        assert not outpaces(union(ODDS, finite_set([10])), EVENS)
        assert outpaces(union(ODDS, finite_set([10])), EVENS - finite_set([4]))

    @given(equal_density_pairs())
    def test_matches_counting(self, pair):
        # with equal densities the count difference is periodic past the exceptions
        x, y = pair
        start = max(x.exceptions_bound(), y.exceptions_bound()) + 1
        period = x.modulus * y.modulus
        assert outpaces(x, y) == brute_outpaces(x, y, start, period)

    @given(periodic_sets())
    def test_irreflexive(self, x):
        assert not outpaces(x, x)

    @given(periodic_sets(max_modulus=6), periodic_sets(max_modulus=6))
    def test_asymmetric(self, x, y):
        assert not (outpaces(x, y) and outpaces(y, x))

    @given(periodic_sets(max_modulus=6), periodic_sets(max_modulus=6), periodic_sets(max_modulus=6))
    def test_transitive(self, x, y, z):
        if outpaces(x, y) and outpaces(y, z):
            assert outpaces(x, z)

    @given(periodic_sets(), periodic_sets())
    def test_proper_superset(self, x, y):
        small, big = intersect(x, y), union(x, y)
        assume(small != big)
        # both infinite and finite differences give an eventually positive lead
        assert outpaces(big, small)
        extra = difference(big, small)
        first = min(k for k in range(10**4) if k in extra)
        assert all(count_upto(big, m) > count_upto(small, m) for m in range(first, 1000))

    @given(infinite_sets(), infinite_sets(), infinite_sets())
    def test_denser_inside_common_superset(self, x, y, z):
        z = union(z, union(x, y))
        assume(relative_density(x, z) < relative_density(y, z))
        assert outpaces(y, x)

    @settings(max_examples=300)
    @given(periodic_sets(), periodic_sets())
    def test_unequal_densities(self, x, y):
        assume(density(x) != density(y))
        assert outpaces(x, y) == (density(x) > density(y))


class TestAlternating:
    def test_examples(self):
        assert alternating_pair(EVENS, ODDS)
        assert alternating_pair(congruence_class(3, 0), congruence_class(3, 1))
        assert not alternating_pair(EVENS, congruence_class(4, 1))
        assert not alternating_pair(ODDS, EVENS)

    def test_finite_rejected(self):
        with pytest.raises(DomainError):
            alternating_pair(EVENS, finite_set([1]))

    @given(infinite_sets(max_modulus=6), infinite_sets(max_modulus=6))
    def test_matches_enumeration(self, x, y):
        count = 4 * x.modulus * y.modulus + x.exceptions_bound() + y.exceptions_bound() + 4
        xs, ys = enumerate_members(x, count), enumerate_members(y, count)
        direct = all(xs[i] < ys[i] < xs[i + 1] for i in range(count - 1))
        assert alternating_pair(x, y) == direct


class TestOracles:
    def test_membership(self):
        squares = oracle("squares")
        assert [k for k in range(30) if k in squares] == [0, 1, 4, 9, 16, 25]
        blocks = oracle("blocks1010")
        assert 0 not in blocks and 5 in blocks and 10 not in blocks and 100 in blocks
        assert squares.count_upto(100) == 11

    def test_greedy_rule(self):
        third = oracle("greedy:1/3")
        assert 0 not in third and 1 in third
        # i + 1 joins exactly when fract(x, i) < 1/3
        for i in range(1, 300):
            assert (i + 1 in third) == (Fraction(third.count_upto(i), i) < Fraction(1, 3))

    def test_unknown(self):
        with pytest.raises(ParseError):
            oracle("primes")
        with pytest.raises(DomainError):
            oracle("greedy:3/2")

    def test_periodic_wrapper(self):
        o = OracleSet.from_periodic(congruence_class(3, 1))
        assert o.count_upto(10) == count_upto(congruence_class(3, 1), 10)

    def test_fract(self):
        assert fract(EVENS, 10) == Fraction(6, 10)
        with pytest.raises(DomainError):
            fract(EVENS, 0)


class TestEstimates:
    def test_ladder(self):
        assert ladder(10**4) == [100, 316, 1000, 3162, 10000]
        assert ladder(500) == [100, 316, 500]
        with pytest.raises(DomainError):
            ladder(99)

    def test_blocks_diverge(self):
        verdict = density_estimate(oracle("blocks1010"), 10**6)
        assert verdict.kind == "Diverges" and str(verdict) == "Diverges"
        values = dict(verdict.values)
        assert values[10**4] <= Fraction(1, 10)
        assert values[10**5] >= Fraction(9, 10)

    def test_evens_converge(self):
        verdict = density_estimate(oracle("evens"), 10**5)
        assert verdict.kind == "Converges"
        assert abs(verdict.estimate - Fraction(1, 2)) < Fraction(1, 100)

    def test_greedy_converges(self):
        verdict = density_estimate(oracle("greedy:1/3"), 10**5)
        assert verdict.kind == "Converges"
        assert abs(verdict.estimate - Fraction(1, 3)) < Fraction(1, 100)

    def test_periodic_input(self):
        assert density_estimate(congruence_class(4, 0), 10**4).kind == "Converges"

    def test_render(self):
        assert str(DensityVerdict("Unknown", None, 500)) == "Unknown(500)"


class TestEmpirical:
    def test_examples(self):
        assert outpaces_empirical(oracle("odds"), oracle("evens"), 1000).kind == "Mixed"
        assert outpaces_empirical(oracle("evens"), oracle("squares"), 10**4) == \
            OutpacingVerdict("YesUpTo", 10**4)
        assert outpaces_empirical(EVENS, EVENS, 100).kind == "Mixed"

    @pytest.mark.parametrize("k", range(1, 7))
    def test_classes_beat_squares(self, k):
        verdict = outpaces_empirical(congruence_class(k, 0), oracle("squares"), 10**4)
        assert str(verdict) == "Yes-up-to(10000)"

    def test_no(self):
        verdict = outpaces_empirical(oracle("squares"), EVENS, 1000)
        assert verdict.kind == "No" and verdict.m <= 10

    def test_horizon(self):
        with pytest.raises(DomainError):
            outpaces_empirical(EVENS, ODDS, 0)
