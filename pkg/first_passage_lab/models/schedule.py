"""Time-varying holes and their exact survival."""
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from first_passage_lab.models.series import ExactProbability, SurvivalCurve
from first_passage_lab.models.word import Word


@dataclass(frozen=True)
class Segment:
    """The hole coded by ``word`` stays open for probability-curve times t_start <= t < t_end."""
    t_start: int
    t_end: int
    word: Word
    cor_value: int

    def __contains__(self, t: object) -> bool:
        return isinstance(t, int) and self.t_start <= t < self.t_end


@dataclass(frozen=True)
class HoleSchedule:
    q: int
    k: int
    segments: Tuple[Segment, ...]

    def __post_init__(self):
        if not self.segments:
            raise ValueError("A hole schedule needs at least one segment")
        if self.segments[0].t_start != 0:
            raise ValueError(f"Schedule starts at t={self.segments[0].t_start}, expected 0")
        for a, b in zip(self.segments, self.segments[1:]):
            if a.t_end != b.t_start:
                raise ValueError(f"Segments [{a.t_start}, {a.t_end}) and [{b.t_start}, {b.t_end}) do not abut")
        for segment in self.segments:
            if segment.t_start >= segment.t_end:
                raise ValueError(f"Empty segment [{segment.t_start}, {segment.t_end})")
            if segment.word.k != self.k or segment.word.q != self.q:
                raise ValueError(f"Segment word {segment.word} does not belong to q={self.q}, k={self.k}")

    @property
    def horizon(self) -> int:
        return self.segments[-1].t_end

    @property
    def switch_times(self) -> Tuple[int, ...]:
        return tuple(s.t_start for s in self.segments[1:])

    def open_word(self, t: int) -> Word:
        """Word of the hole open at time t; the last hole stays open past the horizon."""
        for segment in self.segments:
            if t < segment.t_end:
                return segment.word
        return self.segments[-1].word


@dataclass(frozen=True)
class ScheduleEvaluation:
    schedule: HoleSchedule
    # indexed by n = 0..horizon
    scheduled_survival: SurvivalCurve
    static_survivals: Dict[Word, SurvivalCurve] = field(compare=False)

    @property
    def final_survival(self) -> ExactProbability:
        return self.scheduled_survival.values[-1]

    def best_static(self) -> Optional[Tuple[Word, ExactProbability]]:
        if not self.static_survivals:
            return None
        return min(
            ((w, curve.values[-1]) for w, curve in self.static_survivals.items()),
            key=lambda pair: pair[1],
        )

    @property
    def dominates_static(self) -> bool:
        """True if no static hole leaves fewer survivors at the final time."""
        return all(
            self.final_survival <= curve.values[-1] for curve in self.static_survivals.values()
        )
