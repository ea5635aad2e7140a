import math

import pytest

from paramine.counts import merge_tables
from paramine.errors import NoCooccurrenceError, UnknownPhraseError
from paramine.scoring import (
    SCHEMES,
    SYMMETRIC_SCHEMES,
    cond_prob,
    joint_prob,
    joint_times_pmi,
    pmi,
    score_pair,
    sum_pmi,
)


class TestCondProb:
    def test_toy_value(self, t1_table):
        assert cond_prob(t1_table, "a", "b") == pytest.approx(1 / 3, abs=1e-15)

    def test_skewed_counts_are_asymmetric(self, skew_table):
        assert cond_prob(skew_table, "r1", "r2") == pytest.approx(21 / 22, abs=0)
        assert cond_prob(skew_table, "r2", "r1") == pytest.approx(1 / 22, abs=1e-18)

    def test_self_probability_sums_over_pivots(self, t1_table):
        # P(b|b) over x and y: (1/3)(1/2) + (1/2)(1/2)
        assert cond_prob(t1_table, "b", "b") == pytest.approx(5 / 12, abs=1e-15)

    def test_unknown_first_phrase_raises(self, t1_table):
        with pytest.raises(UnknownPhraseError):
            cond_prob(t1_table, "zzz", "a")

    def test_unknown_second_phrase_is_zero(self, t1_table):
        assert cond_prob(t1_table, "a", "zzz") == 0.0


class TestJointProb:
    def test_toy_values(self, t1_table):
        assert joint_prob(t1_table, "a", "b") == pytest.approx(2 / 15, abs=1e-15)
        assert joint_prob(t1_table, "b", "c") == pytest.approx(0.1, abs=1e-15)

    def test_no_shared_pivot_is_zero(self, t1_table):
        assert joint_prob(t1_table, "a", "c") == 0.0

    def test_swap_is_bit_identical(self, t1_table):
        assert joint_prob(t1_table, "a", "b") == joint_prob(t1_table, "b", "a")

    def test_unknown_phrase_raises(self, t1_table):
        with pytest.raises(UnknownPhraseError):
            joint_prob(t1_table, "a", "zzz")


class TestPmi:
    def test_toy_values(self, t1_table):
        assert pmi(t1_table, "a", "b") == pytest.approx(math.log(5 / 6), abs=1e-15)
        assert pmi(t1_table, "b", "c") == pytest.approx(math.log(1.25), abs=1e-15)

    def test_zero_joint_raises(self, t1_table):
        with pytest.raises(NoCooccurrenceError):
            pmi(t1_table, "a", "c")

    def test_swap_is_bit_identical(self, t1_table):
        assert pmi(t1_table, "a", "b") == pmi(t1_table, "b", "a")


class TestJointTimesPmi:
    def test_toy_value(self, t1_table):
        expected = (2 / 15) * math.log(5 / 6)
        assert joint_times_pmi(t1_table, "a", "b") == pytest.approx(expected, abs=1e-15)

    def test_negative_when_underrepresented(self, t1_table):
        assert joint_times_pmi(t1_table, "a", "b") < 0
        assert joint_times_pmi(t1_table, "b", "c") > 0


class TestSumPmi:
    def test_adds_supporting_corpora(self, t1_table, t2_table):
        expected = math.log(5 / 6) + math.log(3 / 2)
        got = sum_pmi([t1_table, t2_table], "a", "b")
        assert got == pytest.approx(expected, abs=1e-15)
        assert got == pytest.approx(math.log(5 / 4), abs=1e-15)

    def test_zero_joint_corpus_contributes_nothing(self, t1_table, t2_table):
        # b,c share a pivot only in the first corpus
        assert sum_pmi([t1_table, t2_table], "b", "c") == pmi(t1_table, "b", "c")

    def test_single_table_is_bit_identical_to_pmi(self, t1_table):
        for pair in (("a", "b"), ("b", "c")):
            assert sum_pmi([t1_table], *pair) == pmi(t1_table, *pair)

    def test_no_support_anywhere_raises(self, t1_table, t2_table):
        with pytest.raises(NoCooccurrenceError):
            sum_pmi([t1_table, t2_table], "a", "c")

    def test_swap_is_bit_identical(self, t1_table, t2_table):
        tables = [t1_table, t2_table]
        assert sum_pmi(tables, "a", "b") == sum_pmi(tables, "b", "a")


class TestSchemeRegistry:
    def test_scheme_names(self):
        assert SCHEMES == ("cond_prob", "joint_prob", "pmi", "joint_times_pmi", "sum_pmi")
        assert set(SYMMETRIC_SCHEMES) == set(SCHEMES) - {"cond_prob"}

    def test_score_pair_dispatches_every_scheme(self, t1_table, t2_table):
        tables = [t1_table, t2_table]
        merged = merge_tables(tables)
        for scheme in SCHEMES:
            direct = score_pair(scheme, tables, "a", "b")
            cached = score_pair(scheme, tables, "a", "b", merged=merged)
            assert direct == cached

    def test_score_pair_rejects_unknown_scheme(self, t1_table):
        with pytest.raises(ValueError):
            score_pair("geometric_mean", [t1_table], "a", "b")
