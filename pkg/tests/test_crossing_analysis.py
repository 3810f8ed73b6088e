import asyncio
import unittest

from first_passage_lab.models import (
    HorizonExhausted,
    MismatchedAlphabet,
    Word,
)
from first_passage_lab.utils.crossing_engine import (
    IDENTICAL_DIAGNOSIS,
    bound_check,
    certify_pair,
    compare_pair,
    default_horizon,
    delta_series,
    equal_class_check,
    interval_partition,
    interval_partition_async,
    reproduce_table,
    tower_rank,
    unequal_length_checks,
)
from first_passage_lab.utils.passage_engine import compute_series


class TestComparePair(unittest.TestCase):
    def test_delta_values(self):
        """Test Delta for the pair 11 / 10."""
        delta = delta_series(
            compute_series(Word.parse("11"), 12), compute_series(Word.parse("10"), 12)
        )
        self.assertEqual(delta.values[2:9], (0, -1, -1, -1, 0, 2, 6))
        self.assertEqual(delta.shift, 0)

    def test_crossing_of_length_two_words(self):
        """Test that the curves of 11 and 10 cross at N = 7."""
        report = compare_pair(Word.parse("10"), Word.parse("11"))
        self.assertEqual(str(report.w), "11")
        self.assertEqual(report.N, 7)
        self.assertEqual(report.crossing_time, 5)
        self.assertEqual(report.coincidence_end, 2)
        self.assertEqual(report.certificate_window, (7, 8))
        self.assertEqual(report.sign_changes, 1)
        self.assertTrue(report.certified)
        self.assertTrue(bound_check(report))

    def test_same_length_different_overlap(self):
        report = compare_pair(Word.parse("1010"), Word.parse("1000"))
        self.assertEqual(report.N, 21)
        self.assertGreaterEqual(report.N, 10)
        self.assertTrue(report.certified)
        self.assertTrue(bound_check(report))

    def test_unequal_lengths(self):
        """Test a pair of words of lengths 3 and 2."""
        report = certify_pair(Word.parse("10"), Word.parse("111"))
        self.assertEqual(str(report.w), "111")
        self.assertTrue(report.certified)
        self.assertEqual(report.sign_changes, 1)
        self.assertGreater(report.N, 4)
        self.assertTrue(bound_check(report))

        results = unequal_length_checks(report)
        self.assertEqual(len(results), 3)
        early = next(r for r in results if r.name == "early-delta-nonpositive")
        self.assertTrue(early.passed)

    def test_equal_autocorrelation(self):
        """Test that words with equal autocorrelation have identical curves."""
        report = compare_pair(Word.parse("1010"), Word.parse("0101"))
        self.assertTrue(report.identical)
        self.assertIsNone(report.N)
        self.assertEqual(report.diagnosis, IDENTICAL_DIAGNOSIS)
        self.assertTrue(bound_check(report))

        self.assertTrue(equal_class_check(Word.parse("1010"), Word.parse("0101")))
        self.assertTrue(equal_class_check(Word.parse("110"), Word.parse("011")))
        with self.assertRaises(ValueError):
            equal_class_check(Word.parse("111"), Word.parse("110"))

    def test_errors(self):
        with self.assertRaises(MismatchedAlphabet):
            compare_pair(Word.parse("10"), Word.parse("10", q=3))
        with self.assertRaises(HorizonExhausted) as ctx:
            compare_pair(Word.parse("11"), Word.parse("10"), horizon=5)
        self.assertEqual(ctx.exception.horizon, 5)

    def test_horizon_doubling(self):
        """Test that certify_pair retries with a larger horizon."""
        with self.assertLogs("first_passage_lab.utils.crossing_engine", level="WARNING"):
            report = certify_pair(Word.parse("11"), Word.parse("10"), horizon=4)
        self.assertEqual(report.N, 7)
        self.assertEqual(report.horizon_used, 8)

        with self.assertRaises(HorizonExhausted):
            certify_pair(Word.parse("11"), Word.parse("10"), horizon=4, max_horizon=6)

    def test_default_horizon(self):
        self.assertEqual(default_horizon(2), 24)
        self.assertEqual(default_horizon(8), 512)


class TestIntervalPartition(unittest.TestCase):
    def test_length_two(self):
        partition = interval_partition(2, 2)
        self.assertEqual(len(partition.classes), 2)
        self.assertEqual(len(partition.reports), 1)
        self.assertEqual(partition.first_crossing, 7)
        self.assertEqual(partition.last_crossing, 7)

    def test_length_four(self):
        """Test the intermediate interval of binary words of length 4."""
        partition = interval_partition(2, 4)
        self.assertEqual(partition.first_crossing, 20)
        self.assertEqual(partition.last_crossing, 26)
        self.assertEqual(partition.split_moment, 5)
        self.assertEqual(partition.short_length, 15)
        self.assertEqual(partition.intermediate_length, 6)
        self.assertEqual(len(partition.reports), 6)
        self.assertTrue(partition.hierarchy_reversed)
        self.assertTrue(all(r.certified and r.sign_changes == 1 for r in partition.reports))
        self.assertTrue(all(bound_check(r) for r in partition.reports))

    def test_longer_words(self):
        partition = interval_partition(2, 5)
        self.assertEqual((partition.first_crossing, partition.last_crossing), (37, 52))
        partition = interval_partition(2, 8)
        self.assertEqual((partition.first_crossing, partition.last_crossing), (264, 415))

    def test_thread_count_does_not_change_results(self):
        sequential = interval_partition(2, 5, threads=1)
        pooled = interval_partition(2, 5, threads=4)
        self.assertEqual(sequential.reports, pooled.reports)

    def test_async_functionality(self):
        """Test that the async partition matches the synchronous one."""
        async def async_test():
            return await interval_partition_async(2, 4, threads=2)

        partition = asyncio.run(async_test())
        self.assertEqual(partition.first_crossing, 20)

    def test_invalid_length(self):
        with self.assertRaises(ValueError):
            interval_partition(2, 1)

    def test_reproduce_table(self):
        partitions, summary = reproduce_table(2, [4, 5, 6])
        self.assertEqual([p.k for p in partitions], [4, 5, 6])
        self.assertEqual(summary["compared"], 3)
        self.assertEqual(summary["offset"], 0)
        self.assertTrue(summary["short_exceeds_intermediate"])
        for _, ratio in summary["growth_ratios"]:
            self.assertGreaterEqual(ratio, 1.8)


class TestTowerRanking(unittest.TestCase):
    def test_length_three(self):
        """Test that the overlap-free class gives the optimal tower."""
        ranking = tower_rank(2, 3)
        self.assertEqual(len(ranking.optimal), 1)
        self.assertEqual(str(ranking.optimal[0].cor), "100")
        self.assertEqual(str(ranking.classes[0].representative), "001")
        self.assertEqual(str(ranking.classes[-1].cor), "111")
        self.assertTrue(ranking.is_better(Word.parse("001"), Word.parse("000")))
        self.assertFalse(ranking.is_better(Word.parse("000"), Word.parse("001")))

    def test_constant_class_never_optimal(self):
        for k in range(2, 6):
            ranking = tower_rank(2, k)
            self.assertTrue(ranking.optimal)
            self.assertTrue(all(c.cor.s == 0 for c in ranking.optimal))

    def test_witness_matches_crossing(self):
        ranking = tower_rank(2, 2)
        (relation,) = ranking.relations
        self.assertEqual(str(relation.better), "01")
        self.assertEqual(relation.witness, 4)


if __name__ == "__main__":
    unittest.main()
