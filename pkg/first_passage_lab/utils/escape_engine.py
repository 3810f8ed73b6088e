"""Hole switching: open the cylinder that is most likely to be hit next, and count survivors exactly."""
import logging
from typing import Dict, List, Optional

import numpy as np

from first_passage_lab.models.errors import InvariantFalsified
from first_passage_lab.models.schedule import HoleSchedule, ScheduleEvaluation, Segment
from first_passage_lab.models.series import ExactProbability, SurvivalCurve
from first_passage_lab.models.word import Word
from first_passage_lab.utils.correlation import autocorrelation, correlation_classes
from first_passage_lab.utils.crossing_engine import DEFAULT_MAX_HORIZON, certify_pair
from first_passage_lab.utils.parallel import run_parallel
from first_passage_lab.utils.passage_engine import compute_series, survival_curve

logger = logging.getLogger(__name__)


def constant_schedule(word: Word, horizon: int) -> HoleSchedule:
    """A single hole kept open over [0, horizon)."""
    segment = Segment(t_start=0, t_end=horizon, word=word, cor_value=autocorrelation(word).value)
    return HoleSchedule(q=word.q, k=word.k, segments=(segment,))


def greedy_schedule(
    q: int,
    k: int,
    horizon: int,
    threads: Optional[int] = None,
    max_horizon: int = DEFAULT_MAX_HORIZON
) -> HoleSchedule:
    """Build the hole-switching schedule over probability-curve times [0, horizon).

    At every t the open hole is the class representative with the largest first
    hitting probability HitCurve(t). Ties go to the smaller autocorrelation
    value, so all classes tie at t = 0 and the schedule opens with the
    overlap-free class. Each switch is checked against the crossing of the two
    classes involved.

    Args:
        q: Alphabet size
        k: Word length
        horizon: Number of time steps covered by the schedule
        threads: Worker count for the per-class series
        max_horizon: Cap for the crossing certificates

    Returns:
        The schedule

    Raises:
        HorizonExhausted: If a boundary crossing cannot be certified
        InvariantFalsified: If a switch does not land on a pairwise crossing
    """
    if q < 2 or k < 1:
        raise ValueError(f"Greedy schedule needs q >= 2 and k >= 1, got q={q}, k={k}")
    if horizon < 1:
        raise ValueError(f"Schedule horizon must be positive, got {horizon}")

    classes = correlation_classes(q, k)
    reps = [c.representative for c in classes]
    series_horizon = max(horizon - 1 + k, 2 * k)
    series = run_parallel(compute_series, [(w, series_horizon) for w in reps], threads=threads)

    # classes come sorted by autocorrelation value, so max() keeps the first on ties
    def best_at(t: int) -> int:
        return max(range(len(reps)), key=lambda i: (series[i].h[t + k], -i))

    choices: List[int] = [best_at(t) for t in range(horizon)]

    segments: List[Segment] = []
    start = 0
    for t in range(1, horizon + 1):
        if t == horizon or choices[t] != choices[start]:
            cls = classes[choices[start]]
            segments.append(Segment(start, t, cls.representative, cls.cor.value))
            start = t

    for before, after in zip(segments, segments[1:]):
        report = certify_pair(before.word, after.word, max_horizon=max_horizon)
        if report.crossing_time != after.t_start or report.w != after.word:
            logger.error(
                f"Switch from {before.word} to {after.word} at t={after.t_start} but the "
                f"curves cross at t={report.crossing_time}"
            )
            raise InvariantFalsified(
                f"Switch at t={after.t_start} is not the crossing of {before.word} and {after.word}",
                check="switch-at-crossing",
            )

    schedule = HoleSchedule(q=q, k=k, segments=tuple(segments))
    logger.info(f"Greedy schedule for q={q}, k={k}: switches at {list(schedule.switch_times)}")
    return schedule


def _scheduled_counts(schedule: HoleSchedule, n_max: int) -> List[int]:
    """Number of length-n strings that survive the schedule, for n = 0..n_max.

    States are the q^(k-1) possible last k-1 symbols. The window that ends at
    position n is tested against the hole open at time t = n - k.
    """
    q, k = schedule.q, schedule.k
    width = q ** (k - 1)

    survivors = [q ** n for n in range(min(k, n_max + 1))]
    counts = np.ones(width, dtype=object)
    for n in range(k, n_max + 1):
        # index = state * q + symbol is the code of the completed window
        windows = np.repeat(counts, q)
        windows[schedule.open_word(n - k).code] = 0
        counts = windows.reshape(q, width).sum(axis=0)
        survivors.append(int(counts.sum()))
    return survivors


def schedule_survival(
    schedule: HoleSchedule,
    threads: Optional[int] = None
) -> ScheduleEvaluation:
    """Exact survival under a time-varying hole, next to the survival of every static hole.

    Survival is reported for n = 0..horizon symbols read. Trajectories absorbed
    by an earlier hole stay absorbed after that hole is patched.

    Args:
        schedule: The schedule to evaluate
        threads: Worker count for the static series

    Returns:
        The evaluation; ``dominates_static`` tells whether the schedule leaves
        no more survivors than the best static hole
    """
    q, k, horizon = schedule.q, schedule.k, schedule.horizon
    counts = _scheduled_counts(schedule, horizon)
    scheduled = SurvivalCurve(
        word=schedule.segments[0].word,
        start=0,
        values=tuple(ExactProbability(c, n, q) for n, c in enumerate(counts)),
    )

    reps = [c.representative for c in correlation_classes(q, k)]
    series = run_parallel(
        compute_series, [(w, max(horizon, 2 * k)) for w in reps], threads=threads
    )
    static: Dict[Word, SurvivalCurve] = {}
    for s in series:
        curve = survival_curve(s)
        static[s.word] = SurvivalCurve(word=s.word, start=0, values=curve.values[:horizon + 1])

    evaluation = ScheduleEvaluation(
        schedule=schedule, scheduled_survival=scheduled, static_survivals=static
    )
    if len(schedule.segments) > 1 and not evaluation.dominates_static:
        word, best = evaluation.best_static()
        logger.warning(
            f"Static hole {word} leaves {best} survivors at n={horizon}, fewer than the "
            f"schedule's {evaluation.final_survival}"
        )
    return evaluation
