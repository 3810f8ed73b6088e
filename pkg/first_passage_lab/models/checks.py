from dataclasses import dataclass, field
from typing import List, Tuple

from first_passage_lab.models.enums import CheckKind, CheckLevel


@dataclass(frozen=True)
class CheckResult:
    name: str
    kind: CheckKind
    passed: bool
    subject: str = ""
    detail: str = ""


@dataclass
class SuiteReport:
    level: CheckLevel
    results: List[CheckResult] = field(default_factory=list)

    def extend(self, results) -> None:
        self.results.extend(results)

    @property
    def falsified_invariants(self) -> Tuple[CheckResult, ...]:
        return tuple(
            r for r in self.results if r.kind == CheckKind.INVARIANT and not r.passed
        )

    @property
    def refuted_claims(self) -> Tuple[CheckResult, ...]:
        return tuple(
            r for r in self.results if r.kind == CheckKind.PUBLISHED_CLAIM and not r.passed
        )

    @property
    def ok(self) -> bool:
        return not self.falsified_invariants
