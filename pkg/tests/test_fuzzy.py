import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzyarch.fuzzy import (
    FuzzyNumber,
    InvalidExponentError,
    InvalidUniverseError,
    LinguisticLevel,
    NegativeWeightError,
    SampledFuzzySet,
    UniverseMismatchError,
    centroid,
    chen_indices,
    chen_indices_grid,
    fuzzy_add,
    fuzzy_scale,
    level_to_fuzzy,
    mamdani_aggregate,
    membership,
    sup_min_utility,
)


def fn(a, b, c, d):
    return FuzzyNumber(a, b, c, d)


@st.composite
def triangulars(draw, lo=0.0, hi=60.0):
    w, y, z = sorted(draw(st.tuples(*[st.floats(lo, hi)] * 3)))
    return FuzzyNumber.triangular(w, y, z)


@st.composite
def trapezoids(draw, lo=0.0, hi=60.0):
    a, b, c, d = sorted(draw(st.tuples(*[st.floats(lo, hi)] * 4)))
    return FuzzyNumber(a, b, c, d)


class TestFuzzyNumber:
    def test_ordering_enforced(self):
        with pytest.raises(ValueError):
            FuzzyNumber(3, 2, 2, 1)

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            FuzzyNumber(0, 1, 1, math.inf)

    def test_triangular_constructor(self):
        f = FuzzyNumber.triangular(1, 2, 3)
        assert f == fn(1, 2, 2, 3)
        assert f.is_triangular


class TestLevels:
    def test_table_shapes(self):
        assert level_to_fuzzy(LinguisticLevel.VL, 6) == fn(0, 0, 0, 1)
        assert level_to_fuzzy(LinguisticLevel.L, 6) == fn(0, 1, 1, 2)
        assert level_to_fuzzy(LinguisticLevel.M, 6) == fn(1, 2, 2, 3)
        assert level_to_fuzzy(LinguisticLevel.H, 6) == fn(2, 3, 3, 4)
        assert level_to_fuzzy(LinguisticLevel.VH, 6) == fn(3, 4, 6, 6)

    def test_small_universe_rejected(self):
        with pytest.raises(InvalidUniverseError):
            level_to_fuzzy(LinguisticLevel.M, 3.5)

    def test_total_order(self):
        assert (LinguisticLevel.VL < LinguisticLevel.L < LinguisticLevel.M
                < LinguisticLevel.H < LinguisticLevel.VH)

    def test_vl_left_shoulder_decreases_linearly(self):
        vl = level_to_fuzzy(LinguisticLevel.VL, 6)
        assert membership(vl, 0.0) == 1.0
        assert membership(vl, 0.5) == pytest.approx(0.5)
        assert membership(vl, 1.0) == 0.0

    def test_vh_plateau(self):
        vh = level_to_fuzzy(LinguisticLevel.VH, 6)
        for x in (4.0, 5.0, 6.0):
            assert membership(vh, x) == 1.0

    def test_parse(self):
        assert LinguisticLevel.parse(" vh ") is LinguisticLevel.VH
        with pytest.raises(ValueError):
            LinguisticLevel.parse("XL")


class TestMembership:
    def test_peak(self):
        assert membership(fn(1, 2, 2, 3), 2) == 1.0

    def test_rising_midpoint(self):
        assert membership(fn(2, 3, 3, 4), 2.5) == pytest.approx(0.5)

    def test_outside_support(self):
        assert membership(fn(0, 1, 1, 2), 3) == 0.0

    def test_point_number(self):
        assert membership(FuzzyNumber.point(2), 2) == 1.0
        assert membership(FuzzyNumber.point(2), 2.01) == 0.0

    @given(trapezoids(), st.floats(-10, 70))
    def test_range_and_support(self, f, x):
        mu = membership(f, x)
        assert 0.0 <= mu <= 1.0
        if x < f.a or x > f.d:
            assert mu == 0.0

    @given(trapezoids(), st.data())
    def test_monotone_on_edges(self, f, data):
        if f.b > f.a:
            x1 = data.draw(st.floats(f.a, f.b))
            x2 = data.draw(st.floats(x1, f.b))
            assert membership(f, x1) <= membership(f, x2) + 1e-12
        if f.d > f.c:
            x1 = data.draw(st.floats(f.c, f.d))
            x2 = data.draw(st.floats(x1, f.d))
            assert membership(f, x1) >= membership(f, x2) - 1e-12


class TestArithmetic:
    def test_add(self):
        assert fuzzy_add(fn(1, 2, 2, 3), fn(2, 3, 3, 4)) == fn(3, 5, 5, 7)

    def test_add_identity(self):
        f = fn(1, 2, 4, 6)
        assert fuzzy_add(FuzzyNumber.zero(), f) == f

    def test_add_shoulders(self):
        assert fuzzy_add(fn(0, 0, 0, 1), fn(3, 4, 6, 6)) == fn(3, 4, 6, 7)

    def test_scale(self):
        assert fuzzy_scale(fn(1, 2, 2, 3), 2) == fn(2, 4, 4, 6)
        assert fuzzy_scale(fn(3, 4, 6, 6), 0) == FuzzyNumber.zero()

    def test_scale_identity(self):
        f = fn(1, 2, 4, 6)
        assert fuzzy_scale(f, 1) == f

    def test_negative_scale_rejected(self):
        with pytest.raises(NegativeWeightError):
            fuzzy_scale(fn(1, 2, 2, 3), -0.5)

    @given(trapezoids(), trapezoids())
    def test_add_commutative(self, f, g):
        assert fuzzy_add(f, g) == fuzzy_add(g, f)

    @given(trapezoids(), trapezoids(), trapezoids())
    def test_add_associative_within_tolerance(self, f, g, h):
        left = fuzzy_add(fuzzy_add(f, g), h)
        right = fuzzy_add(f, fuzzy_add(g, h))
        assert np.allclose(left.quadruple(), right.quadruple(), atol=1e-9)


class TestCentroid:
    def test_symmetric_triangle(self):
        assert centroid(fn(1, 2, 2, 3)) == pytest.approx(2.0)

    def test_skewed_triangle(self):
        assert centroid(fn(0, 0, 0, 3)) == pytest.approx(1.0)

    def test_symmetric_trapezoid(self):
        assert centroid(fn(0, 1, 2, 3)) == pytest.approx(1.5)

    def test_point(self):
        assert centroid(FuzzyNumber.point(4.2)) == 4.2

    @given(triangulars(), triangulars())
    def test_additive_for_triangles(self, f, g):
        assert centroid(fuzzy_add(f, g)) == pytest.approx(
            centroid(f) + centroid(g), abs=1e-9)

    @given(triangulars(), st.floats(0, 10))
    def test_scale_linear_for_triangles(self, f, lam):
        assert centroid(fuzzy_scale(f, lam)) == pytest.approx(
            lam * centroid(f), abs=1e-9)


class TestChen:
    def test_worked_pair(self):
        got = chen_indices([fn(1, 2, 2, 3), fn(2, 3, 3, 4)], k=1.0)
        assert got == pytest.approx([0.375, 0.625])

    def test_matches_grid_oracle_on_worked_pair(self):
        closed = chen_indices([fn(1, 2, 2, 3), fn(2, 3, 3, 4)], k=1.0)
        grid = chen_indices_grid([fn(1, 2, 2, 3), fn(2, 3, 3, 4)], k=1.0)
        assert closed == pytest.approx(grid, abs=1e-3)

    def test_identical_candidates_tie(self):
        a, b = chen_indices([fn(1, 2, 2, 4), fn(1, 2, 2, 4)], k=1.0)
        assert a == b

    def test_degenerate_universe(self):
        zeros = [FuzzyNumber.zero(), FuzzyNumber.zero()]
        assert chen_indices(zeros) == [0.5, 0.5]
        assert chen_indices_grid(zeros) == [0.5, 0.5]

    def test_invalid_exponent(self):
        with pytest.raises(InvalidExponentError):
            chen_indices([fn(0, 1, 1, 2)], k=0)
        with pytest.raises(InvalidExponentError):
            chen_indices_grid([fn(0, 1, 1, 2)], k=-1)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(triangulars(), min_size=2, max_size=10))
    def test_closed_form_matches_oracle(self, cands):
        closed = chen_indices(cands, k=1.0)
        grid = chen_indices_grid(cands, k=1.0, step=1e-4)
        assert closed == pytest.approx(grid, abs=1e-3)

    @settings(max_examples=25, deadline=None)
    @given(st.lists(trapezoids(), min_size=2, max_size=6))
    def test_trapezoid_closed_form_matches_oracle(self, cands):
        closed = chen_indices(cands, k=1.0)
        grid = chen_indices_grid(cands, k=1.0, step=1e-4)
        assert closed == pytest.approx(grid, abs=1e-3)

    @settings(max_examples=30, deadline=None)
    @given(st.lists(triangulars(lo=0, hi=30), min_size=2, max_size=6),
           st.floats(0.1, 5))
    def test_dominance(self, cands, delta):
        base = cands[0]
        shifted = FuzzyNumber(base.a + delta, base.b + delta,
                              base.c + delta, base.d + delta)
        pool = cands + [shifted]
        idx = chen_indices(pool, k=1.0)
        assert idx[-1] > idx[0]

    @settings(max_examples=30, deadline=None)
    @given(st.lists(triangulars(lo=0.0, hi=20.0), min_size=2, max_size=6),
           st.floats(0.1, 8))
    def test_scaling_leaves_order_unchanged(self, cands, lam):
        before = chen_indices(cands, k=1.0)
        scaled = [fuzzy_scale(f, lam) for f in cands]
        after = chen_indices(scaled, k=1.0)
        order_before = sorted(range(len(cands)), key=lambda i: before[i])
        order_after = sorted(range(len(cands)), key=lambda i: after[i])
        ranks_before = [sorted(before).index(v) for v in before]
        ranks_after = [sorted(after).index(v) for v in after]
        assert ranks_before == ranks_after, (order_before, order_after)

    def test_k2_uses_grid(self):
        cands = [fn(1, 2, 2, 3), fn(2, 3, 3, 4)]
        got = chen_indices(cands, k=2.0)
        oracle = chen_indices_grid(cands, k=2.0)
        assert got == pytest.approx(oracle)
        assert got[1] > got[0]


class TestSupMin:
    def make_reference(self, shape, lo, hi):
        return SampledFuzzySet.from_function(
            lambda xs: np.interp(xs, *shape), lo, hi)

    def test_peak_inside_plateau(self):
        ref = SampledFuzzySet(0.0, 6.0, np.ones(6001))
        assert sup_min_utility(fn(1, 2, 2, 3), ref) == 1.0

    def test_disjoint_supports(self):
        values = np.zeros(6001)
        values[5000:] = 1.0  # reference lives on [5, 6]
        ref = SampledFuzzySet(0.0, 6.0, values)
        assert sup_min_utility(fn(1, 2, 2, 3), ref) == 0.0

    def test_maximizing_set_intersection(self):
        xs = np.linspace(1.0, 4.0, 30001)
        ref = SampledFuzzySet(1.0, 4.0, (xs - 1.0) / 3.0)
        got = sup_min_utility(fn(1, 2, 2, 3), ref)
        assert got == pytest.approx(0.5, abs=1e-3)

    def test_universe_mismatch(self):
        a = SampledFuzzySet(0.0, 6.0, np.zeros(61))
        b = SampledFuzzySet(0.0, 5.0, np.zeros(61))
        with pytest.raises(UniverseMismatchError):
            sup_min_utility(a, b)


class TestMamdani:
    def test_all_vh_peaks(self):
        out = mamdani_aggregate([(LinguisticLevel.VH, None)] * 3, 6.0)
        assert out.membership(5.0) == pytest.approx(1.0)
        assert 4.0 <= out.centroid() <= 6.0
        assert out.membership(2.0) == 0.0

    def test_min_label_consequent(self):
        out = mamdani_aggregate(
            [(LinguisticLevel.VH, None), (LinguisticLevel.VH, None),
             (LinguisticLevel.H, None)], 6.0)
        h = level_to_fuzzy(LinguisticLevel.H, 6.0)
        xs = np.linspace(0, 6, 601)
        for x in xs:
            assert out.membership(x) == pytest.approx(membership(h, x),
                                                      abs=1e-9)

    def test_single_m_peak(self):
        out = mamdani_aggregate([(LinguisticLevel.M, None)], 6.0)
        m = level_to_fuzzy(LinguisticLevel.M, 6.0)
        assert out.membership(2.0) == pytest.approx(1.0)
        assert out.membership(1.5) == pytest.approx(membership(m, 1.5),
                                                    abs=1e-9)

    def test_off_peak_input_fires_partial_rules(self):
        # x = 2.5 lies between the M and H peaks, so both labels fire at 0.5.
        out = mamdani_aggregate([(LinguisticLevel.M, 2.5)], 6.0)
        assert out.values.max() == pytest.approx(0.5, abs=1e-9)

    def test_output_is_valid_set(self):
        out = mamdani_aggregate(
            [(LinguisticLevel.L, 1.2), (LinguisticLevel.VH, 3.7)], 6.0)
        assert out.values.min() >= 0.0
        assert out.values.max() <= 1.0

    def test_empty_antecedents_rejected(self):
        with pytest.raises(ValueError):
            mamdani_aggregate([], 6.0)
