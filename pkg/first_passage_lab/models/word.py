"""Words over a finite alphabet and the structures derived from their self-overlaps.

Storage is reading order: ``symbols[0]`` is the leftmost character. Formulas on
autocorrelations use the right-to-left convention ``w = w_k ... w_1``, so the
character with index ``i`` in that convention sits at storage position ``k - i``.
Autocorrelation bits follow the same convention: ``b(i)`` is 1 when the prefix
and the suffix of length ``i`` coincide, ``b(k)`` is always 1 and ``b(0)`` is 1 by
the augmentation convention.
"""
import string
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Optional, Sequence, Tuple

from typing_extensions import TypeAlias

from first_passage_lab.models.enums import Relation
from first_passage_lab.models.errors import InvalidWord

Symbols: TypeAlias = Tuple[int, ...]

_DIGITS = string.digits + string.ascii_uppercase


@dataclass(frozen=True)
class Word:
    symbols: Symbols
    q: int = 2

    def __post_init__(self):
        if self.q < 2:
            raise InvalidWord(f"Alphabet size must be at least 2, got {self.q}")
        if len(self.symbols) < 1:
            raise InvalidWord("Words must have at least one symbol")
        for symbol in self.symbols:
            if not 0 <= symbol < self.q:
                raise InvalidWord(f"Symbol {symbol} is outside the alphabet [0, {self.q})")

    @classmethod
    def parse(cls, text: str, q: Optional[int] = None) -> "Word":
        """Parse a word from text.

        Digit strings are read as symbol values (``"1010"`` is 1,0,1,0). Any other
        text maps its distinct characters to 0, 1, ... in order of first
        appearance, so ``"HTHT"`` becomes 0,1,0,1.

        Args:
            text: The word as typed by a user
            q: Alphabet size (default: 2, or enough symbols for the text)

        Returns:
            The parsed Word

        Raises:
            InvalidWord: If the text is empty or does not fit the alphabet
        """
        text = text.strip()
        if not text:
            raise InvalidWord("Empty word")

        if text.isdigit():
            symbols = tuple(int(ch) for ch in text)
        else:
            labels: Dict[str, int] = {}
            for ch in text:
                labels.setdefault(ch, len(labels))
            symbols = tuple(labels[ch] for ch in text)

        if q is None:
            q = max(2, max(symbols) + 1)
        return cls(symbols=symbols, q=q)

    @classmethod
    def from_code(cls, code: int, k: int, q: int = 2) -> "Word":
        """Build the word whose base-q reading (most significant symbol first) is ``code``."""
        symbols = []
        for _ in range(k):
            code, digit = divmod(code, q)
            symbols.append(digit)
        return cls(symbols=tuple(reversed(symbols)), q=q)

    @property
    def k(self) -> int:
        return len(self.symbols)

    @property
    def code(self) -> int:
        """Base-q value of the word read left to right."""
        value = 0
        for symbol in self.symbols:
            value = value * self.q + symbol
        return value

    def complement(self) -> "Word":
        """Map every symbol x to q - 1 - x (bitwise complement for q = 2)."""
        return Word(symbols=tuple(self.q - 1 - x for x in self.symbols), q=self.q)

    def __str__(self) -> str:
        if self.q <= len(_DIGITS):
            return "".join(_DIGITS[x] for x in self.symbols)
        return ".".join(str(x) for x in self.symbols)


@dataclass(frozen=True)
class Autocorrelation:
    # bits[0] is b_k, bits[-1] is b_1
    bits: Tuple[int, ...]
    value: int
    s: int

    @property
    def k(self) -> int:
        return len(self.bits)

    def b(self, i: int) -> int:
        """Bit ``b_i``; ``b_0`` is 1 and indices outside [0, k] read as 0."""
        if i == 0:
            return 1
        if i < 0 or i > self.k:
            return 0
        return self.bits[self.k - i]

    def overlaps(self) -> Tuple[int, ...]:
        """Proper overlap lengths i in [1, k-1] with b_i = 1, in decreasing order."""
        return tuple(i for i in range(self.k - 1, 0, -1) if self.b(i))

    def __str__(self) -> str:
        return "".join(str(bit) for bit in self.bits)


@dataclass(frozen=True)
class StructureProfile:
    word: Word
    cor: Autocorrelation
    I: FrozenSet[int]
    bracket: Dict[int, int] = field(compare=False)
    S: FrozenSet[int] = frozenset()
    d: Optional[int] = None
    T: Dict[int, int] = field(default_factory=dict, compare=False)
    per: int = 0

    @property
    def s(self) -> int:
        return self.cor.s


@dataclass(frozen=True)
class PairProfile:
    w: Word
    w_prime: Word
    relation: Relation
    r: Optional[int] = None


@dataclass(frozen=True)
class CorrelationClass:
    """All words of one refinement sharing an autocorrelation."""
    cor: Autocorrelation
    members: Tuple[Word, ...]

    @property
    def representative(self) -> Word:
        return self.members[0]

    @property
    def per(self) -> int:
        return self.cor.k - self.cor.s

    def __contains__(self, word: object) -> bool:
        return word in self.members


def sort_words(words: Sequence[Word]) -> Tuple[Word, ...]:
    """Lexicographic order on symbol tuples."""
    return tuple(sorted(words, key=lambda w: w.symbols))
