"""Ground-truth records: exhaustive counts, Monte Carlo histograms and map kernels."""
from dataclasses import dataclass, field
from typing import Optional, Tuple

from first_passage_lab.models.enums import KernelType
from first_passage_lab.models.word import Word


@dataclass(frozen=True)
class BruteCounts:
    """a, h and H for one length n, counted by scanning all q^n strings.

    H is the literal count, so H = 1 at n = k where the series formula gives -1.
    """
    word: Word
    n: int
    a: int
    h: int
    H: int


@dataclass(frozen=True)
class MapKernel:
    """A map whose itinerary over its basic partition is an IID uniform symbol stream."""
    kernel: KernelType
    q: int = 2

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"Kernel alphabet must have at least 2 symbols, got {self.q}")
        if self.kernel in (KernelType.TENT, KernelType.VON_NEUMANN_ULAM) and self.q != 2:
            raise ValueError(f"The {self.kernel.value} map has two branches, got q={self.q}")

    def __str__(self) -> str:
        return f"{self.kernel.value}(q={self.q})"


@dataclass(frozen=True)
class EmpiricalHits:
    word: Word
    trials: int
    horizon: int
    seed: int
    # histogram[t] counts trials whose first hit happened at time t
    histogram: Tuple[int, ...] = field(repr=False)
    censored: int
    generator: str = "PCG64"
    kernel: Optional[MapKernel] = None

    @property
    def hits(self) -> int:
        return sum(self.histogram)

    def frequency(self, t: int) -> float:
        return self.histogram[t] / self.trials
