"""Independent ground truth for the exact series: enumeration, simulation and map itineraries."""
import logging
import math
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np

from first_passage_lab.models.enums import KernelType
from first_passage_lab.models.errors import TooLarge
from first_passage_lab.models.oracle import BruteCounts, EmpiricalHits, MapKernel
from first_passage_lab.models.series import HitCurve
from first_passage_lab.models.word import Word
from first_passage_lab.utils.parallel import run_parallel
from first_passage_lab.utils.passage_engine import compute_series

logger = logging.getLogger(__name__)

# Exhaustive enumeration guard on the number of strings
MAX_STRINGS = 2 ** 24

# Trials simulated per independently seeded batch
BATCH_SIZE = 65536

Point = Union[Fraction, int, str, Tuple[Fraction, Fraction]]


def brute_counts(w: Word, n: int) -> BruteCounts:
    """Count a, h and H at length n by scanning every string.

    Strings are the integers 0..q^n-1 read in base q; the window ending at
    position p is (code // q^(n-p)) mod q^k.

    Raises:
        TooLarge: If q^n exceeds 2^24
    """
    q, k = w.q, w.k
    if n < 0:
        raise ValueError(f"Length must be non-negative, got {n}")
    total = q ** n
    if total > MAX_STRINGS:
        raise TooLarge(f"{q}^{n} strings exceed the enumeration guard of {MAX_STRINGS}")
    if n < k:
        return BruteCounts(word=w, n=n, a=total, h=0, H=0)

    codes = np.arange(total, dtype=np.int64)
    modulus = q ** k
    target = w.code

    earlier = np.zeros(total, dtype=bool)
    interior = np.zeros(total, dtype=bool)
    begins = ends = None
    for p in range(k, n + 1):
        occurs = (codes // q ** (n - p)) % modulus == target
        if p == k:
            begins = occurs
        if p == n:
            ends = occurs
        else:
            earlier |= occurs
            if p > k:
                interior |= occurs

    a = int(np.count_nonzero(~(earlier | ends)))
    h = int(np.count_nonzero(ends & ~earlier))
    H = int(np.count_nonzero(begins & ends & ~interior))
    return BruteCounts(word=w, n=n, a=a, h=h, H=H)


def oracle_mismatches(w: Word, n_max: int) -> List[Tuple[int, str, int, int]]:
    """Compare ``compute_series`` with ``brute_counts`` for n = 0..n_max.

    H is skipped at n = k, where the series carries -1 by construction.

    Returns:
        (n, field, series value, brute value) for every disagreement
    """
    series = compute_series(w, max(n_max, 2 * w.k))
    mismatches = []
    for n in range(n_max + 1):
        brute = brute_counts(w, n)
        expected = {"a": series.a[n], "h": series.h[n], "H": series.H[n]}
        for name, value in expected.items():
            if name == "H" and n == w.k:
                continue
            if getattr(brute, name) != value:
                mismatches.append((n, name, value, getattr(brute, name)))
    if mismatches:
        logger.error(f"Series of {w} disagree with enumeration: {mismatches[:3]}")
    return mismatches


def _itinerary_from_digits(digits: np.ndarray, kernel: Optional[MapKernel]) -> np.ndarray:
    """Symbols of a random point whose base-q digits are ``digits`` (one row per point).

    Doubling and baker itineraries are the digits themselves. Tent and
    von Neumann-Ulam itineraries satisfy s_n = d_n XOR d_(n-1), the second map
    being conjugate to the first by an increasing change of coordinates.
    """
    if kernel is None or kernel.kernel in (KernelType.DOUBLING, KernelType.BAKER):
        return digits
    symbols = digits.copy()
    symbols[:, 1:] ^= digits[:, :-1]
    return symbols


def _simulate_batch(
    w: Word,
    size: int,
    horizon: int,
    seed: int,
    batch: int,
    kernel: Optional[MapKernel]
) -> np.ndarray:
    q, k = w.q, w.k
    rng = np.random.default_rng([seed, batch])
    length = horizon - 1 + k
    digits = rng.integers(0, q, size=(size, length), dtype=np.int64)
    symbols = _itinerary_from_digits(digits, kernel)

    modulus = q ** k
    target = w.code
    code = np.zeros(size, dtype=np.int64)
    first_hit = np.full(size, -1, dtype=np.int64)
    for pos in range(length):
        code = (code * q + symbols[:, pos]) % modulus
        if pos >= k - 1:
            fresh = (code == target) & (first_hit < 0)
            first_hit[fresh] = pos - k + 1
    hit = first_hit[first_hit >= 0]
    return np.bincount(hit, minlength=horizon)


def monte_carlo_hits(
    w: Word,
    trials: int,
    horizon: int,
    seed: int,
    kernel: Optional[MapKernel] = None,
    threads: Optional[int] = None
) -> EmpiricalHits:
    """Estimate HitCurve(t) for t < horizon from simulated symbol streams.

    Trials run in batches of ``BATCH_SIZE``; batch b draws from a PCG64 generator
    seeded with (seed, b), so results do not depend on the worker count.

    Args:
        w: Target word
        trials: Number of simulated orbits, at least 1
        horizon: Number of time bins
        seed: Base seed
        kernel: Optional map whose itinerary of a random point supplies the symbols
        threads: Worker count

    Returns:
        The first-hit histogram and the censored count
    """
    if trials < 1:
        raise ValueError(f"Need at least one trial, got {trials}")
    if horizon < 1:
        raise ValueError(f"Horizon must be positive, got {horizon}")
    if kernel is not None and kernel.q != w.q:
        raise ValueError(f"Kernel {kernel} does not match the alphabet of {w}")

    sizes = [BATCH_SIZE] * (trials // BATCH_SIZE)
    if trials % BATCH_SIZE:
        sizes.append(trials % BATCH_SIZE)
    args = [(w, size, horizon, seed, batch, kernel) for batch, size in enumerate(sizes)]
    counts = run_parallel(_simulate_batch, args, threads=threads)

    histogram = np.sum(counts, axis=0)
    hits = int(histogram.sum())
    logger.info(f"Simulated {trials} orbits for {w}: {hits} hits within {horizon} steps")
    return EmpiricalHits(
        word=w,
        trials=trials,
        horizon=horizon,
        seed=seed,
        histogram=tuple(int(x) for x in histogram),
        censored=trials - hits,
        kernel=kernel,
    )


def binomial_consistency(
    empirical: EmpiricalHits,
    hit_curve: HitCurve,
    sigmas: float = 4.0,
    min_expected: float = 50.0
) -> List[Tuple[int, int, float, float]]:
    """Bins whose count lies more than ``sigmas`` binomial deviations from the exact value.

    Bins with fewer than ``min_expected`` expected hits are not judged.

    Returns:
        (t, observed, expected, standard deviation) for every violating bin
    """
    violations = []
    for t in range(min(empirical.horizon, hit_curve.end + 1)):
        p = float(hit_curve[t])
        expected = empirical.trials * p
        if expected < min_expected:
            continue
        sd = math.sqrt(empirical.trials * p * (1 - p))
        observed = empirical.histogram[t]
        if abs(observed - expected) > sigmas * sd:
            violations.append((t, observed, expected, sd))
    if violations:
        logger.warning(f"{len(violations)} bins of {empirical.word} outside {sigmas} sigma")
    return violations


def _as_fraction(value: Union[Fraction, int, str, float]) -> Fraction:
    x = Fraction(value)
    if not 0 <= x < 1:
        raise ValueError(f"Initial point {value} is outside [0, 1)")
    return x


def map_itinerary(
    kernel: MapKernel,
    steps: int,
    point: Optional[Point] = None,
    seed: Optional[int] = None
) -> List[int]:
    """Itinerary of a point over the kernel's basic partition.

    Named points are iterated exactly with rational arithmetic. Without a point
    the itinerary of a random point is generated symbolically from seeded
    uniform digits.

    Args:
        kernel: The map
        steps: Number of symbols
        point: Initial x in [0, 1), or (x, y) for the baker map
        seed: Seed for a random initial point

    Returns:
        The symbol sequence
    """
    if steps < 0:
        raise ValueError(f"Steps must be non-negative, got {steps}")
    q = kernel.q

    if point is None:
        rng = np.random.default_rng(seed)
        digits = rng.integers(0, q, size=(1, steps), dtype=np.int64)
        return [int(s) for s in _itinerary_from_digits(digits, kernel)[0]]

    if kernel.kernel == KernelType.BAKER and isinstance(point, tuple):
        x, y = _as_fraction(point[0]), Fraction(point[1])
    else:
        x, y = _as_fraction(point), Fraction(0)

    half = Fraction(1, 2)
    symbols: List[int] = []
    for _ in range(steps):
        if kernel.kernel in (KernelType.DOUBLING, KernelType.BAKER):
            symbol = math.floor(q * x)
            x = q * x - symbol
            y = (y + symbol) / q
        elif kernel.kernel == KernelType.TENT:
            symbol = 0 if x < half else 1
            x = 2 * x if symbol == 0 else 2 - 2 * x
        else:
            symbol = 0 if x < half else 1
            x = 4 * x * (1 - x)
        symbols.append(symbol)
    return symbols
