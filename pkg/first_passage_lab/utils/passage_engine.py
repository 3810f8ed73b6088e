"""Exact first hitting, first return and survival series for cylinder words."""
import logging
from typing import List

from first_passage_lab.models.errors import HorizonTooSmall
from first_passage_lab.models.series import (
    CountSeries,
    ExactProbability,
    HitCurve,
    ReturnCurve,
    SurvivalCurve,
)
from first_passage_lab.models.word import Word
from first_passage_lab.utils.correlation import autocorrelation

logger = logging.getLogger(__name__)


def compute_series(w: Word, horizon: int) -> CountSeries:
    """Compute a(n), h(n) and H(n) for n = 0..horizon with exact integers.

    h is seeded with h(n) = 0 for n < k and h(k) = 1, then extended by

        h(n) = q h(n-1) - h(n-k) + sum_{t=1}^{k-1} b_t H(n-k+t)

    while H(m) = q h(m-1) - h(m) is filled alongside. a(n) = q^n for n < k and
    a(n) = q a(n-1) - h(n) afterwards.

    Args:
        w: The word coding the cylinder
        horizon: Largest n to compute, at least 2k

    Returns:
        The count series

    Raises:
        HorizonTooSmall: If horizon < 2k
    """
    q, k = w.q, w.k
    if horizon < 2 * k:
        raise HorizonTooSmall(f"Horizon {horizon} is below 2k = {2 * k} for word {w}")

    cor = autocorrelation(w)
    overlaps = [t for t in range(1, k) if cor.b(t)]

    h: List[int] = [0] * (horizon + 1)
    H: List[int] = [0] * (horizon + 1)
    h[k] = 1
    for m in range(1, k + 1):
        H[m] = q * h[m - 1] - h[m]

    for n in range(k + 1, horizon + 1):
        value = q * h[n - 1] - h[n - k]
        for t in overlaps:
            value += H[n - k + t]
        h[n] = value
        H[n] = q * h[n - 1] - value

    a: List[int] = [0] * (horizon + 1)
    power = 1
    for n in range(k):
        a[n] = power
        power *= q
    for n in range(k, horizon + 1):
        a[n] = q * a[n - 1] - h[n]

    logger.debug(f"Computed series for {w} up to n={horizon}")
    return CountSeries(word=w, horizon=horizon, a=tuple(a), h=tuple(h), H=tuple(H))


def hit_curve(series: CountSeries) -> HitCurve:
    """First hitting probabilities h(t+k) / q^(t+k) for t = 0..horizon-k."""
    q, k = series.q, series.k
    values = tuple(
        ExactProbability(series.h[n], n, q) for n in range(k, series.horizon + 1)
    )
    return HitCurve(word=series.word, start=0, values=values)


def survival_curve(series: CountSeries) -> SurvivalCurve:
    """Survival probabilities a(n) / q^n for n = 0..horizon."""
    values = tuple(
        ExactProbability(series.a[n], n, series.q) for n in range(series.horizon + 1)
    )
    return SurvivalCurve(word=series.word, start=0, values=values)


def return_curve(series: CountSeries) -> ReturnCurve:
    """First return probabilities H(n) / q^n for n = k+1..horizon."""
    q, k = series.q, series.k
    values = tuple(
        ExactProbability(series.H[n], n, q) for n in range(k + 1, series.horizon + 1)
    )
    return ReturnCurve(word=series.word, start=k + 1, values=values)


def return_tails(series: CountSeries) -> List[ExactProbability]:
    """``tail_of_returns`` for every t = 0..horizon-k in one backward pass."""
    q, k, horizon = series.q, series.k, series.horizon
    tails: List[ExactProbability] = []
    numerator = series.h[horizon]
    weight = 1
    for t in range(horizon - k, -1, -1):
        tails.append(ExactProbability(numerator, horizon, q))
        # the next (smaller) t also collects m = t + k
        numerator += series.H[t + k] * weight
        weight *= q
    tails.reverse()
    return tails


def tail_of_returns(series: CountSeries, t: int) -> ExactProbability:
    """Sum of ReturnCurve(m) over m > t + k, using the truncated sum plus the exact remainder.

    The first return terms telescope: sum_{t+k < m <= horizon} H(m)/q^m equals
    h(t+k)/q^(t+k) - h(horizon)/q^horizon, so the remainder beyond the horizon
    is h(horizon)/q^horizon.
    """
    q, horizon = series.q, series.horizon
    numerator = 0
    for m in range(t + series.k + 1, horizon + 1):
        numerator = numerator * q + series.H[m]
    numerator += series.h[horizon]
    return ExactProbability(numerator, horizon, q)
