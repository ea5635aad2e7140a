import random

import pytest

from paramine.counts import build_table
from paramine.errors import ParamineError
from paramine.evaluation import (
    evaluate_on_annotated,
    evaluate_schemes,
    precision_at_k,
)
from paramine.mining import CandidatePair, RankedList, enumerate_candidates, rank
from paramine.synth import SyntheticSpec, generate_synthetic


def ranked_from_keys(keys):
    entries = [
        CandidatePair(lo, hi, scores={"pmi": float(len(keys) - i)})
        for i, (lo, hi) in enumerate(keys)
    ]
    return RankedList("pmi", entries)


class TestPrecisionAtK:
    def test_perfect_prefix(self):
        keys = [(f"a{i}", f"b{i}") for i in range(20)]
        ranked = ranked_from_keys(keys)
        gold = set(keys[:10])
        precision, truncated = precision_at_k(ranked, gold, 10)
        assert precision == 1.0 and truncated is False
        precision, truncated = precision_at_k(ranked, gold, 20)
        assert precision == 0.5 and truncated is False

    def test_short_list_sets_flag(self):
        ranked = ranked_from_keys([("a", "b"), ("c", "d")])
        precision, truncated = precision_at_k(ranked, {("a", "b")}, 10)
        assert precision == 0.5 and truncated is True

    def test_empty_list(self):
        assert precision_at_k(RankedList("pmi", []), {("a", "b")}, 5) == (0.0, True)

    def test_bad_k(self):
        with pytest.raises(ValueError):
            precision_at_k(ranked_from_keys([("a", "b")]), set(), 0)


class TestEvaluateSchemes:
    def test_accepts_lines_or_tables(self, t1_lines, t2_lines):
        bitexts = {"de": t1_lines, "fr": t2_lines}
        tables = [build_table(t1_lines), build_table(t2_lines)]
        gold = {("a", "b")}
        by_lines = evaluate_schemes(bitexts, gold, ["pmi"], ks=(1,))
        by_tables = evaluate_schemes(tables, gold, ["pmi"], ks=(1,))
        assert by_lines[0].precision_at_k == by_tables[0].precision_at_k

    def test_one_report_per_scheme_in_order(self, t1_table):
        reports = evaluate_schemes([t1_table], {("a", "b")}, ["pmi", "joint_prob"], ks=(1, 2))
        assert [r.scheme for r in reports] == ["pmi", "joint_prob"]
        for report in reports:
            assert set(report.precision_at_k) == {1, 2}

    def test_rows_are_sorted_by_k(self, t1_table):
        (report,) = evaluate_schemes([t1_table], {("a", "b")}, ["pmi"], ks=(50, 10))
        assert [k for _, k, _ in report.rows()] == [10, 50]

    def test_empty_gold_refused(self, t1_table):
        with pytest.raises(ValueError, match="gold"):
            evaluate_schemes([t1_table], set(), ["pmi"])

    def test_synthetic_sanity(self):
        bitexts, gold = generate_synthetic(SyntheticSpec(n_groups=80, seed=0))
        reports = evaluate_schemes(bitexts, gold, ["sum_pmi"], ks=(50,))
        assert reports[0].precision_at_k[50] >= 0.9

    def test_random_ranking_matches_base_rate(self):
        # precision of a shuffled list converges on the gold fraction
        rng = random.Random(0)
        keys = [(f"a{i:03d}", f"b{i:03d}") for i in range(1000)]
        gold = set(keys[:300])
        rng.shuffle(keys)
        ranked = ranked_from_keys(keys)
        precision, _ = precision_at_k(ranked, gold, 500)
        assert precision == pytest.approx(0.3, abs=0.05)


class TestEvaluateOnAnnotated:
    def fixture_ranked(self):
        # 20 ranked pairs, every other one annotated
        keys = [(f"a{i:02d}", f"b{i:02d}") for i in range(20)]
        return ranked_from_keys(keys), keys

    def test_precision_over_annotated_subsequence(self):
        ranked, keys = self.fixture_ranked()
        annotated = {}
        for i, key in enumerate(keys):
            if i % 2 == 0:
                annotated[key] = "good" if i < 10 else "bad"
        report = evaluate_on_annotated(ranked, annotated, ks=(5, 10))
        # first five annotated pairs are ranks 0..8, all good
        assert report.precision_at_k[5] == 1.0
        assert report.truncated[5] is False
        assert report.precision_at_k[10] == 0.5
        assert report.truncated[10] is False

    def test_curve_sits_at_global_ranks(self):
        ranked, keys = self.fixture_ranked()
        annotated = {keys[4]: "good", keys[14]: "bad"}
        report = evaluate_on_annotated(ranked, annotated)
        assert [p.rank for p in report.curve] == [5, 15]
        assert report.curve[1].acceptable_fraction == 0.5

    def test_trash_counts_against_precision(self):
        ranked, keys = self.fixture_ranked()
        annotated = {keys[0]: "good", keys[1]: "trash"}
        report = evaluate_on_annotated(ranked, annotated, ks=(2,))
        assert report.precision_at_k[2] == 0.5

    def test_short_annotation_sets_flag(self):
        ranked, keys = self.fixture_ranked()
        report = evaluate_on_annotated(ranked, {keys[3]: "good"}, ks=(10,))
        assert report.precision_at_k[10] == 1.0
        assert report.truncated[10] is True

    def test_no_overlap_refused(self):
        ranked, _ = self.fixture_ranked()
        with pytest.raises(ParamineError, match="no overlap"):
            evaluate_on_annotated(ranked, {("zz", "zz2"): "good"})

    def test_scheme_carried_through(self, t1_table):
        candidates = enumerate_candidates([t1_table])
        ranked = rank(candidates, [t1_table], "joint_prob")
        annotated = {candidates[0].key: "mostly_good"}
        report = evaluate_on_annotated(ranked, annotated, ks=(1,))
        assert report.scheme == "joint_prob"
        assert report.precision_at_k[1] == 1.0
