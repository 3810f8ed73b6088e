import itertools
import unittest

from first_passage_lab.models import InvalidWord, MismatchedAlphabet, Relation, Word
from first_passage_lab.utils.correlation import (
    autocorrelation,
    class_of,
    correlation_classes,
    minimal_period,
    pair_profile,
    structure_profile,
)
from first_passage_lab.utils.invariants import eq1_closure, structure_checks


def binary_words(k):
    return [Word(symbols=s, q=2) for s in itertools.product(range(2), repeat=k)]


class TestWordParsing(unittest.TestCase):
    def test_digit_strings(self):
        """Test that digit strings are read as symbol values."""
        w = Word.parse("1010")
        self.assertEqual(w.symbols, (1, 0, 1, 0))
        self.assertEqual(w.q, 2)
        self.assertEqual(Word.parse("012").q, 3)

    def test_letter_strings(self):
        """Test that letters map to symbols in order of first appearance."""
        self.assertEqual(Word.parse("HTHT").symbols, (0, 1, 0, 1))

    def test_invalid_words(self):
        """Test that empty words and out-of-alphabet symbols are rejected."""
        with self.assertRaises(InvalidWord):
            Word.parse("")
        with self.assertRaises(InvalidWord):
            Word(symbols=(2,), q=2)
        with self.assertRaises(InvalidWord):
            Word.parse("012", q=2)

    def test_codes(self):
        self.assertEqual(str(Word.from_code(5, 4)), "0101")
        self.assertEqual(Word.parse("0101").code, 5)
        self.assertEqual(str(Word.parse("0011").complement()), "1100")


class TestAutocorrelation(unittest.TestCase):
    def test_known_autocorrelations(self):
        """Test autocorrelations of words with known overlaps."""
        cor = autocorrelation(Word.parse("10100101"))
        self.assertEqual(str(cor), "10000101")
        self.assertEqual(cor.value, 133)
        self.assertEqual(cor.s, 3)

        self.assertEqual(str(autocorrelation(Word.parse("1111"))), "1111")
        self.assertEqual(str(autocorrelation(Word.parse("012"))), "100")
        self.assertEqual(str(autocorrelation(Word.parse("1"))), "1")
        self.assertEqual(str(autocorrelation(Word.parse("HTHTHHHTHTH"))), "10000010101")

    def test_augmented_bits(self):
        cor = autocorrelation(Word.parse("1000"))
        self.assertEqual(cor.b(0), 1)
        self.assertEqual(cor.b(4), 1)
        self.assertEqual(cor.b(5), 0)
        self.assertEqual(cor.s, 0)
        self.assertEqual(cor.overlaps(), ())

    def test_complement_invariance(self):
        """Test that a binary word and its complement share an autocorrelation."""
        for k in range(1, 9):
            for w in binary_words(k):
                self.assertEqual(autocorrelation(w), autocorrelation(w.complement()))

    def test_value_bounds_and_closure(self):
        """Test the value range and the periodicity closure over q = 2 and q = 3."""
        for q, k_max in ((2, 9), (3, 6)):
            for k in range(1, k_max + 1):
                for symbols in itertools.product(range(q), repeat=k):
                    w = Word(symbols=symbols, q=q)
                    cor = autocorrelation(w)
                    self.assertTrue(2 ** (k - 1) <= cor.value <= 2 ** k - 1)
                    self.assertIsNone(eq1_closure(w))


class TestStructureProfile(unittest.TestCase):
    def test_mixed_overlaps(self):
        """Test I, T and the s-class on a word with overlaps 5, 3 and 1."""
        profile = structure_profile(Word.parse("HTHTHHHTHTH"))
        self.assertEqual(profile.I, frozenset({5, 3, 1}))
        self.assertEqual(profile.T, {5: 0, 3: 0, 1: 2})
        self.assertEqual(profile.s, 5)
        self.assertEqual(profile.d, 1)

    def test_periodic_word(self):
        profile = structure_profile(Word.parse("HTHTHTHTHTH"))
        self.assertEqual(str(profile.cor), "10101010101")
        self.assertEqual(profile.I, frozenset({9}))
        self.assertEqual(profile.S, frozenset({9, 7, 5, 3, 1}))
        self.assertEqual(profile.per, 2)

    def test_overlap_free_word(self):
        profile = structure_profile(Word.parse("1000"))
        self.assertEqual(profile.I, frozenset())
        self.assertIsNone(profile.d)
        self.assertEqual(profile.per, 4)

    def test_structural_propositions(self):
        """Test the structural propositions on every binary word up to length 12."""
        for k in range(1, 13):
            for w in binary_words(k):
                findings = structure_checks(w)
                failing = {name: detail for name, detail in findings.items() if detail}
                self.assertEqual(failing, {}, msg=str(w))

    def test_period_multiples_include_the_full_length(self):
        """Test the alternative on multiples of the period, up to t(k-s) = k and t(k-s) - 1 = k."""
        # p = 3 divides k = 6: b_6 = 1, so b_2 and b_5 must vanish
        profile = structure_profile(Word.parse("100100"))
        self.assertEqual(profile.s, 3)
        self.assertEqual(profile.cor.b(6), 1)
        self.assertEqual((profile.cor.b(2), profile.cor.b(5)), (0, 0))
        self.assertIsNone(structure_checks(Word.parse("100100"))["period-multiples"])

        # p = 3 divides k + 1 = 5 + 1: the second range reaches b_5 = 1, so b_3 must vanish
        profile = structure_profile(Word.parse("10110"))
        self.assertEqual(profile.s, 2)
        self.assertEqual(profile.cor.b(3), 0)
        self.assertIsNone(structure_checks(Word.parse("10110"))["period-multiples"])

        # overlap-free words: b_k = 1 leaves b_(k-1) = 0 to carry the alternative
        self.assertIsNone(structure_checks(Word.parse("1000"))["period-multiples"])

    def test_minimal_period(self):
        self.assertEqual(minimal_period(Word.parse("101")), 2)
        self.assertEqual(minimal_period(Word.parse("001")), 3)
        self.assertEqual(minimal_period(Word.parse("1111")), 1)


class TestPairProfile(unittest.TestCase):
    def test_relations(self):
        """Test the autocorrelation comparison and r."""
        profile = pair_profile(Word.parse("101"), Word.parse("001"))
        self.assertEqual(profile.relation, Relation.W_DOMINATES)

        profile = pair_profile(Word.parse("1111"), Word.parse("1010"))
        self.assertEqual(profile.relation, Relation.W_DOMINATES)
        self.assertEqual(profile.r, 3)

        w = Word.parse("1010")
        profile = pair_profile(w, w)
        self.assertEqual(profile.relation, Relation.EQUAL_COR)
        self.assertIsNone(profile.r)

        self.assertEqual(
            pair_profile(Word.parse("001"), Word.parse("101")).relation,
            Relation.W_PRIME_DOMINATES,
        )

    def test_mismatched_alphabets(self):
        with self.assertRaises(MismatchedAlphabet):
            pair_profile(Word.parse("10"), Word.parse("10", q=3))


class TestCorrelationClasses(unittest.TestCase):
    def test_binary_length_four(self):
        """Test the four correlation classes of binary words of length 4."""
        classes = correlation_classes(2, 4)
        self.assertEqual([str(c.cor) for c in classes], ["1000", "1001", "1010", "1111"])
        self.assertEqual([str(c.representative) for c in classes], ["0001", "0010", "0101", "0000"])
        self.assertEqual([len(c.members) for c in classes], [6, 6, 2, 2])
        self.assertEqual(sum(len(c.members) for c in correlation_classes(3, 3)), 27)

    def test_class_of(self):
        cls = class_of(Word.parse("1010"))
        self.assertIn(Word.parse("0101"), cls)
        self.assertEqual(cls.per, 2)


if __name__ == "__main__":
    unittest.main()
