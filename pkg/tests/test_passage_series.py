import itertools
import unittest
from fractions import Fraction

from first_passage_lab.models import ExactProbability, HorizonTooSmall, Word
from first_passage_lab.utils.invariants import return_growth_claim, series_checks
from first_passage_lab.utils.passage_engine import (
    compute_series,
    hit_curve,
    return_curve,
    return_tails,
    survival_curve,
    tail_of_returns,
)


class TestComputeSeries(unittest.TestCase):
    def test_fibonacci_word(self):
        """Test the counts for the word 11."""
        series = compute_series(Word.parse("11"), 12)
        self.assertEqual(series.h[2:7], (1, 1, 2, 3, 5))
        self.assertEqual(series.H[2], -1)
        self.assertEqual(series.H[3], 1)
        self.assertEqual(series.H[4], 0)
        self.assertEqual(series.a[4], 8)

    def test_linear_word(self):
        """Test that h(n) = n - 1 for the word 10."""
        series = compute_series(Word.parse("10"), 30)
        for n in range(2, 31):
            self.assertEqual(series.h[n], n - 1)
        self.assertEqual(series.a[5], 6)

    def test_seed_values(self):
        for text in ("1", "101", "0120", "1000"):
            w = Word.parse(text, q=3)
            series = compute_series(w, 2 * w.k)
            self.assertEqual(series.h[w.k], 1)
            self.assertEqual(series.H[w.k], -1)
            self.assertEqual(series.a[w.k], 3 ** w.k - 1)
            self.assertTrue(all(series.h[n] == 0 for n in range(w.k)))

    def test_horizon_too_small(self):
        with self.assertRaises(HorizonTooSmall):
            compute_series(Word.parse("1010"), 7)

    def test_identities_hold_for_binary_words(self):
        """Test the exact identities on every binary word up to length 6."""
        for k in range(1, 7):
            for symbols in itertools.product(range(2), repeat=k):
                series = compute_series(Word(symbols=symbols, q=2), 12 * k)
                failing = {name: d for name, d in series_checks(series).items() if d}
                self.assertEqual(failing, {}, msg=str(series.word))

    def test_identities_hold_for_ternary_words(self):
        for k in range(1, 4):
            for symbols in itertools.product(range(3), repeat=k):
                series = compute_series(Word(symbols=symbols, q=3), 12 * k)
                failing = {name: d for name, d in series_checks(series).items() if d}
                self.assertEqual(failing, {}, msg=str(series.word))


class TestReturnCounts(unittest.TestCase):
    def test_small_return_counts(self):
        """Test the first return counts of 1010 below 3k."""
        series = compute_series(Word.parse("1010"), 20)
        self.assertEqual(series.h[4:10], (1, 2, 3, 6, 12, 22))
        self.assertEqual(series.H[5:16], (0, 1, 0, 0, 2, 3, 4, 9, 18, 32, 60))

    def test_upper_bound_needs_two_k(self):
        """Test that H(n) <= h(n-k) can fail between k+1 and 2k."""
        series = compute_series(Word.parse("1010"), 20)
        self.assertGreater(series.H[6], series.h[2])

    def test_return_growth_counterexample(self):
        """Test that the sum bound on return counts fails for 1010."""
        series = compute_series(Word.parse("1010"), 48)
        self.assertLess(series.H[11], series.H[10] + series.H[9])
        self.assertIsNotNone(return_growth_claim(series))

    def test_overlap_free_word_has_no_claim(self):
        self.assertIsNone(return_growth_claim(compute_series(Word.parse("1000"), 48)))


class TestProbabilityCurves(unittest.TestCase):
    def test_hit_curve(self):
        """Test hitting probabilities at the first times."""
        hits = hit_curve(compute_series(Word.parse("11"), 10))
        self.assertEqual(hits[0].as_fraction(), Fraction(1, 4))
        self.assertEqual(hits[1].as_fraction(), Fraction(1, 8))
        self.assertEqual(hits[0].to_decimal(), "0.25")
        self.assertEqual(hits.end, 8)

        hits = hit_curve(compute_series(Word.parse("10"), 10))
        self.assertEqual(hits[2].as_fraction(), Fraction(3, 16))

    def test_survival_and_return_curves(self):
        series = compute_series(Word.parse("11"), 10)
        survival = survival_curve(series)
        self.assertEqual(survival[4], ExactProbability(8, 4))
        self.assertEqual(survival[4].as_fraction(), Fraction(1, 2))
        self.assertEqual(survival[1], ExactProbability(1, 0))

        returns = return_curve(series)
        self.assertEqual(returns.start, 3)
        self.assertEqual(returns[3].as_fraction(), Fraction(1, 8))
        with self.assertRaises(IndexError):
            returns[2]

    def test_return_tails(self):
        """Test that the tail of return probabilities equals the hitting probability."""
        series = compute_series(Word.parse("1011"), 40)
        hits = hit_curve(series)
        tails = return_tails(series)
        self.assertEqual(len(tails), 37)
        for t in (0, 1, 5, 20, 36):
            self.assertEqual(tails[t], hits[t])
            self.assertEqual(tail_of_returns(series, t), hits[t])


class TestExactProbability(unittest.TestCase):
    def test_arithmetic_and_order(self):
        half = ExactProbability(1, 1)
        quarter = ExactProbability(1, 2)
        self.assertEqual(half, ExactProbability(2, 2))
        self.assertLess(quarter, half)
        self.assertEqual((half + quarter).as_fraction(), Fraction(3, 4))
        self.assertEqual((half - quarter), quarter)
        self.assertEqual(quarter.complement().as_fraction(), Fraction(3, 4))
        self.assertEqual(hash(half), hash(ExactProbability(4, 3)))

    def test_decimal_rendering(self):
        """Test half-even rounding and trailing zero removal."""
        self.assertEqual(ExactProbability(1, 3).to_decimal(2), "0.12")
        self.assertEqual(ExactProbability(3, 3).to_decimal(2), "0.38")
        self.assertEqual(ExactProbability(1, 0).to_decimal(), "1")
        self.assertEqual(ExactProbability(-1, 2).to_decimal(), "-0.25")
        self.assertEqual(ExactProbability(1, 2, q=3).to_decimal(4), "0.1111")

    def test_mixed_alphabets(self):
        self.assertEqual(ExactProbability(1, 0, q=2), ExactProbability(1, 0, q=3))
        with self.assertRaises(ValueError):
            ExactProbability(1, 1, q=2) + ExactProbability(1, 1, q=3)


if __name__ == "__main__":
    unittest.main()
