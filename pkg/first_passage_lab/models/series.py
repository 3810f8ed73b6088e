"""Exact count series and the probability curves derived from them."""
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterator, Tuple

from first_passage_lab.models.word import Word


@total_ordering
@dataclass(frozen=True, eq=False)
class ExactProbability:
    """The rational number numerator / q^exp, kept exact.

    Comparisons cross-multiply integers; no floating point is involved until
    ``to_decimal`` renders the value at a serialization boundary.
    """
    numerator: int
    exp: int
    q: int = 2

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.q ** self.exp)

    def _aligned(self, other: "ExactProbability") -> Tuple[int, int, int]:
        if self.q != other.q:
            raise ValueError(f"Cannot align probabilities over q={self.q} and q={other.q}")
        exp = max(self.exp, other.exp)
        return (
            self.numerator * self.q ** (exp - self.exp),
            other.numerator * other.q ** (exp - other.exp),
            exp,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactProbability):
            return NotImplemented
        if self.q != other.q:
            return self.as_fraction() == other.as_fraction()
        a, b, _ = self._aligned(other)
        return a == b

    def __lt__(self, other: "ExactProbability") -> bool:
        if self.q != other.q:
            return self.as_fraction() < other.as_fraction()
        a, b, _ = self._aligned(other)
        return a < b

    def __hash__(self) -> int:
        return hash(self.as_fraction())

    def __add__(self, other: "ExactProbability") -> "ExactProbability":
        a, b, exp = self._aligned(other)
        return ExactProbability(a + b, exp, self.q)

    def __sub__(self, other: "ExactProbability") -> "ExactProbability":
        a, b, exp = self._aligned(other)
        return ExactProbability(a - b, exp, self.q)

    def complement(self) -> "ExactProbability":
        """1 - self."""
        return ExactProbability(self.q ** self.exp - self.numerator, self.exp, self.q)

    def to_decimal(self, precision: int = 12) -> str:
        """Render with ``precision`` fractional digits, rounding half to even.

        Trailing zeros are dropped, so 1/4 renders as ``0.25``.
        """
        denominator = self.q ** self.exp
        negative = self.numerator < 0
        scaled, remainder = divmod(abs(self.numerator) * 10 ** precision, denominator)
        twice = 2 * remainder
        if twice > denominator or (twice == denominator and scaled % 2 == 1):
            scaled += 1

        whole, frac = divmod(scaled, 10 ** precision)
        text = str(whole)
        if precision > 0:
            digits = str(frac).rjust(precision, "0").rstrip("0")
            if digits:
                text = f"{text}.{digits}"
        if negative and scaled != 0:
            text = "-" + text
        return text

    def __float__(self) -> float:
        return float(self.as_fraction())

    def __str__(self) -> str:
        return f"{self.numerator}/{self.q}^{self.exp}"


@dataclass(frozen=True)
class CountSeries:
    """a(n), h(n), H(n) for one word, indexed by n = 0..horizon.

    a(n) counts length-n strings avoiding the word, h(n) those whose first
    occurrence of the word ends at position n, H(n) = q h(n-1) - h(n) those that
    begin and end with the word with no occurrence in between (H(k) = -1 by the
    same formula).
    """
    word: Word
    horizon: int
    a: Tuple[int, ...]
    h: Tuple[int, ...]
    H: Tuple[int, ...]

    @property
    def q(self) -> int:
        return self.word.q

    @property
    def k(self) -> int:
        return self.word.k

    def h_at(self, n: int) -> int:
        """h(n) with h(n) = 0 for negative n."""
        return self.h[n] if n >= 0 else 0

    def H_at(self, n: int) -> int:
        return self.H[n] if n >= 0 else 0


@dataclass(frozen=True)
class ProbabilityCurve:
    """A sequence of exact probabilities indexed from ``start``."""
    word: Word
    start: int
    values: Tuple[ExactProbability, ...]

    @property
    def end(self) -> int:
        """Last index covered (inclusive)."""
        return self.start + len(self.values) - 1

    def __getitem__(self, index: int) -> ExactProbability:
        if not self.start <= index <= self.end:
            raise IndexError(f"{type(self).__name__} covers [{self.start}, {self.end}], got {index}")
        return self.values[index - self.start]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[ExactProbability]:
        return iter(self.values)

    def items(self) -> Iterator[Tuple[int, ExactProbability]]:
        for offset, value in enumerate(self.values):
            yield self.start + offset, value


class HitCurve(ProbabilityCurve):
    """First hitting probability at time t >= 0: h(t+k) / q^(t+k)."""


class ReturnCurve(ProbabilityCurve):
    """First return probability H(n) / q^n, indexed by n > k."""


class SurvivalCurve(ProbabilityCurve):
    """Survival probability a(n) / q^n, indexed by n >= 0."""
