"""Crossing reports, interval partitions and tower rankings."""
from dataclasses import dataclass, field
from typing import Optional, Tuple

from first_passage_lab.models.word import CorrelationClass, Word


@dataclass(frozen=True)
class DeltaSeries:
    """Delta(n) = h(n) - q^(k-k') h'(n-k+k') for an oriented pair (cor(w) >= cor(w'))."""
    w: Word
    w_prime: Word
    values: Tuple[int, ...]

    @property
    def shift(self) -> int:
        return self.w.k - self.w_prime.k

    @property
    def horizon(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> int:
        return self.values[n]


@dataclass(frozen=True)
class CrossingReport:
    """Outcome of comparing two first hitting curves.

    N is the smallest n with Delta(n) > 0 in h-index units; the probability
    curves cross at time N - k. ``certified`` means the growth step
    Delta(n) >= (q-1) Delta(n-1) held for k consecutive n starting at N and Delta
    stayed positive up to the horizon.
    """
    w: Word
    w_prime: Word
    horizon_used: int
    identical: bool = False
    N: Optional[int] = None
    coincidence_end: Optional[int] = None
    certified: bool = False
    certificate_window: Optional[Tuple[int, int]] = None
    sign_changes: int = 0
    growth_violations: Tuple[int, ...] = ()
    diagnosis: str = ""

    @property
    def q(self) -> int:
        return self.w.q

    @property
    def crossing_time(self) -> Optional[int]:
        """First probability-curve time t with P_w(t) > P_w'(t)."""
        return None if self.N is None else self.N - self.w.k

    @property
    def pair_key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return tuple(sorted((self.w.symbols, self.w_prime.symbols)))


@dataclass(frozen=True)
class IntervalPartition:
    q: int
    k: int
    classes: Tuple[CorrelationClass, ...]
    split_moment: int
    first_crossing: int
    last_crossing: int
    reports: Tuple[CrossingReport, ...] = field(repr=False)
    horizon_used: int = 0
    hierarchy_reversed: bool = True

    @property
    def short_length(self) -> int:
        return self.first_crossing - self.split_moment

    @property
    def intermediate_length(self) -> int:
        return self.last_crossing - self.first_crossing


@dataclass(frozen=True)
class BetterThan:
    """Tower over ``better`` beats the tower over ``worse`` for every t > witness."""
    better: Word
    worse: Word
    witness: int


@dataclass(frozen=True)
class TowerRanking:
    q: int
    k: int
    # best first
    classes: Tuple[CorrelationClass, ...]
    optimal: Tuple[CorrelationClass, ...]
    relations: Tuple[BetterThan, ...] = field(repr=False)

    def is_better(self, a: Word, b: Word) -> bool:
        return any(rel.better == a and rel.worse == b for rel in self.relations)
