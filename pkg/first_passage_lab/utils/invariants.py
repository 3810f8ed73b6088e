"""Verification suite: proven identities are asserted, published claims are evaluated and reported.

Every check aggregates over a sweep of words or pairs and keeps the first
counterexample. A failing invariant marks the suite as failed; a failing
published claim is a finding and is only logged.
"""
import itertools
import logging
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from first_passage_lab.models.checks import CheckResult, SuiteReport
from first_passage_lab.models.enums import CheckKind, CheckLevel
from first_passage_lab.models.errors import InvariantFalsified
from first_passage_lab.models.series import CountSeries, ExactProbability
from first_passage_lab.models.word import Word
from first_passage_lab.utils.correlation import (
    autocorrelation,
    correlation_classes,
    structure_profile,
)
from first_passage_lab.utils.crossing_engine import (
    PUBLISHED_TABLE,
    bound_check,
    certify_pair,
    delta_series,
    interval_partition,
    reproduce_table,
    tower_rank,
    unequal_length_checks,
)
from first_passage_lab.utils.escape_engine import (
    constant_schedule,
    greedy_schedule,
    schedule_survival,
)
from first_passage_lab.utils.oracle_engine import (
    binomial_consistency,
    monte_carlo_hits,
    oracle_mismatches,
)
from first_passage_lab.utils.parallel import run_parallel
from first_passage_lab.utils.passage_engine import (
    compute_series,
    hit_curve,
    return_tails,
    survival_curve,
)

logger = logging.getLogger(__name__)

# Maps a failing check name to a short description of the first counterexample
Findings = Dict[str, Optional[str]]


def _all_words(q: int, k: int) -> Iterable[Word]:
    for symbols in itertools.product(range(q), repeat=k):
        yield Word(symbols=symbols, q=q)


def eq1_closure(w: Word) -> Optional[str]:
    """b_j = 1 forces b_(k-(k-j)t) = 1 for every t up to k/(k-j)."""
    cor = autocorrelation.__wrapped__(w)
    k = w.k
    for j in cor.overlaps():
        for t in range(1, k // (k - j) + 1):
            if not cor.b(k - (k - j) * t):
                return f"{w}: b_{j}=1 but b_{k - (k - j) * t}=0"
    return None


def structure_checks(w: Word) -> Findings:
    """Bounds on cor(w) and the structural propositions on I, S, T."""
    profile = structure_profile(w)
    cor, k, s = profile.cor, w.k, profile.s
    findings: Findings = {}

    bounded = cor.b(k) == 1 and 2 ** (k - 1) <= cor.value <= 2 ** k - 1
    findings["cor-bounds"] = None if bounded else f"{w}: cor={cor}"

    findings["eq1-closure"] = eq1_closure(w)

    top_ok = (s == 0 or s in profile.I) and (profile.d is None or profile.d <= s)
    findings["s-in-I"] = None if top_ok else f"{w}: s={s}, I={sorted(profile.I)}"

    short = [i for i in profile.I if i != s and i + profile.T[i] >= k - s]
    findings["tail-agreement-bound"] = f"{w}: i={short[0]}" if short else None

    overlaps = set(cor.overlaps())
    union = set(profile.S) | (set(profile.I) - {s})
    findings["overlap-decomposition"] = (
        None if overlaps == union else f"{w}: {sorted(overlaps)} != {sorted(union)}"
    )

    if s != k - 1:
        p = k - s
        first = all(cor.b(t * p) == 0 for t in range(1, k // p + 1))
        second = all(cor.b(t * p - 1) == 0 for t in range(1, (k + 1) // p + 1))
        findings["period-multiples"] = None if first or second else f"{w}: period {p}"
    else:
        findings["period-multiples"] = None
    return findings


def _expected_small_H(w: Word, n: int, I: frozenset, s: int) -> int:
    k = w.k
    if n == k:
        return -1
    if n == 2 * k:
        return 0 if s > 0 and k % (k - s) == 0 else 1
    return 1 if (2 * k - n) in I else 0


def series_checks(series: CountSeries) -> Findings:
    """Exact identities every computed series must satisfy."""
    w, q, k, horizon = series.word, series.q, series.k, series.horizon
    profile = structure_profile(w)
    cor, s = profile.cor, profile.s
    h, H, a = series.h, series.H, series.a
    findings: Findings = {}

    seeds_ok = (
        all(a[n] == q ** n and h[n] == 0 for n in range(k))
        and a[k] == q ** k - 1 and h[k] == 1
    )
    findings["seed-values"] = None if seeds_ok else f"{w}"

    bad = next(
        (n for n in range(k, 2 * k + 1) if H[n] != _expected_small_H(w, n, profile.I, s)), None
    )
    findings["small-n-returns"] = None if bad is None else f"{w}: H({bad})={H[bad]}"

    span = k - s if s > 0 else k - 1
    bad = next(
        (n for n in range(horizon + 1)
         if h[n] < (q - 1) * sum(series.h_at(n - t) for t in range(1, span + 1))),
        None,
    )
    findings["hit-growth"] = None if bad is None else f"{w}: n={bad}"

    bad = next(
        (n for n in range(1, horizon - k + 1)
         if h[n] != sum(cor.b(t) * H[n + t] for t in range(1, k + 1))),
        None,
    )
    findings["hits-from-returns"] = None if bad is None else f"{w}: n={bad}"

    bad = next(
        (n for n in range(k + 2, horizon + 1) if H[n] < (q - 1) * h[n - k - 1]), None
    )
    findings["returns-lower-bound"] = None if bad is None else f"{w}: n={bad}"

    bad = next((n for n in range(2 * k, horizon + 1) if H[n] > h[n - k]), None)
    findings["returns-upper-bound"] = None if bad is None else f"{w}: n={bad}"

    bad = next((n for n in range(k, horizon + 1) if h[n] <= 0), None)
    findings["hits-positive"] = None if bad is None else f"{w}: n={bad}"

    hits = hit_curve(series)
    survival = survival_curve(series)
    one = ExactProbability(1, 0, q)
    total = ExactProbability(0, 0, q)
    bad = None
    for t, p in hits.items():
        total = total + p
        if one - total != survival[t + k]:
            bad = t
            break
    findings["normalization"] = None if bad is None else f"{w}: T={bad}"

    tails = return_tails(series)
    bad = next((t for t, tail in enumerate(tails) if tail != hits[t]), None)
    findings["return-tail-identity"] = None if bad is None else f"{w}: t={bad}"
    return findings


def return_growth_claim(series: CountSeries) -> Optional[str]:
    """H(n) >= (q-1) sum_{t<=l} H(n-t) for s > 0, n >= 2k + l and l in {1, k/2, k-1}."""
    w, q, k = series.word, series.q, series.k
    if autocorrelation(w).s == 0 or k < 2:
        return None
    for l in sorted({1, max(1, k // 2), k - 1}):
        for n in range(2 * k + l, series.horizon + 1):
            if series.H[n] < (q - 1) * sum(series.H[n - t] for t in range(1, l + 1)):
                return f"{w}: l={l}, n={n}"
    return None


def _aggregate(
    name: str,
    kind: CheckKind,
    scope: str,
    outcomes: Iterable[Optional[str]]
) -> CheckResult:
    outcomes = list(outcomes)
    failures = [o for o in outcomes if o is not None]
    detail = f"{len(failures)}/{len(outcomes)} fail, first {failures[0]}" if failures else f"{len(outcomes)} cases"
    result = CheckResult(name=name, kind=kind, passed=not failures, subject=scope, detail=detail)
    if failures and kind == CheckKind.INVARIANT:
        logger.error(f"Invariant {name} falsified on {scope}: {detail}")
    elif failures:
        logger.warning(f"Published claim {name} fails on {scope}: {detail}")
    return result


def _collect(findings: List[Findings], kind: CheckKind, scope: str) -> List[CheckResult]:
    names = list(findings[0]) if findings else []
    return [_aggregate(name, kind, scope, (f[name] for f in findings)) for name in names]


def _guarded(name: str, scope: str, func: Callable[[], List[CheckResult]]) -> List[CheckResult]:
    """Run a check whose engine raises InvariantFalsified on its own."""
    try:
        return func()
    except InvariantFalsified as e:
        return [CheckResult(e.check or name, CheckKind.INVARIANT, False, scope, str(e))]


def word_suite(q: int, k_max: int, threads: Optional[int] = None) -> List[CheckResult]:
    """Structure and series checks on every word of length 1..k_max over horizon 12k."""
    words = [w for k in range(1, k_max + 1) for w in _all_words(q, k)]
    scope = f"q={q}, k<={k_max}"
    structure = [structure_checks(w) for w in words]
    series = run_parallel(compute_series, [(w, 12 * w.k) for w in words], threads=threads)

    results = _collect(structure, CheckKind.INVARIANT, scope)
    results += _collect([series_checks(s) for s in series], CheckKind.INVARIANT, scope)

    classes: Dict[Tuple, Tuple[int, ...]] = {}
    identity: List[Optional[str]] = []
    for s in series:
        key = (s.k, autocorrelation(s.word))
        first = classes.setdefault(key, s.h)
        identity.append(None if first == s.h else f"{s.word}")
    results.append(_aggregate("equal-class-identity", CheckKind.INVARIANT, scope, identity))

    results.append(_aggregate(
        "return-growth", CheckKind.PUBLISHED_CLAIM, scope,
        (return_growth_claim(s) for s in series),
    ))
    return results


def structure_sweep(q: int, k_min: int, k_max: int) -> List[CheckResult]:
    """Structural propositions on every word with k_min <= k <= k_max, without series."""
    findings = [structure_checks(w) for k in range(k_min, k_max + 1) for w in _all_words(q, k)]
    return _collect(findings, CheckKind.INVARIANT, f"q={q}, {k_min}<=k<={k_max}")


def closure_sweep(q: int, k_max: int) -> CheckResult:
    outcomes = (eq1_closure(w) for k in range(1, k_max + 1) for w in _all_words(q, k))
    return _aggregate("eq1-closure", CheckKind.INVARIANT, f"q={q}, k<={k_max}", outcomes)


def crossing_sweep(k_max: int, threads: Optional[int] = None) -> List[CheckResult]:
    """Certify every pair of binary correlation classes with 2 <= k' <= k <= k_max."""
    reports = []
    for k in range(2, k_max + 1):
        reports.extend(interval_partition(2, k, threads=threads).reports)
    for k, k_prime in itertools.combinations(range(2, k_max + 1), 2):
        for a in correlation_classes(2, k_prime):
            for b in correlation_classes(2, k):
                reports.append(certify_pair(b.representative, a.representative))

    scope = f"q=2, 2<=k'<=k<={k_max}"
    certified = (None if r.certified else f"{r.w},{r.w_prime}: {r.diagnosis}" for r in reports)
    single = (None if r.sign_changes == 1 else f"{r.w},{r.w_prime}: {r.sign_changes}" for r in reports)
    bounds = (None if bound_check(r) else f"{r.w},{r.w_prime}: N={r.N}" for r in reports)

    def early_nonpositive(r) -> Optional[str]:
        k = r.w.k
        if r.w_prime.k != k or autocorrelation(r.w).s != autocorrelation(r.w_prime).s:
            return None
        delta = delta_series(compute_series(r.w, 4 * k), compute_series(r.w_prime, 4 * k))
        bad = next((n for n in range(4 * k) if delta[n] > 0), None)
        return None if bad is None else f"{r.w},{r.w_prime}: n={bad}"

    results = [
        _aggregate("single-crossing-certified", CheckKind.INVARIANT, scope, certified),
        _aggregate("single-sign-change", CheckKind.INVARIANT, scope, single),
        _aggregate("crossing-lower-bound", CheckKind.INVARIANT, scope, bounds),
        _aggregate("same-overlap-early-order", CheckKind.INVARIANT, scope,
                   (early_nonpositive(r) for r in reports)),
    ]

    lemma_results: Dict[str, List[Optional[str]]] = {}
    for r in reports:
        for result in unequal_length_checks(r):
            lemma_results.setdefault(result.name, []).append(
                None if result.passed else f"{result.subject}: {result.detail}"
            )
    for name, outcomes in lemma_results.items():
        results.append(_aggregate(name, CheckKind.PUBLISHED_CLAIM, scope, outcomes))
    return results


def partition_suite(k_values: Iterable[int], threads: Optional[int] = None) -> List[CheckResult]:
    """Hierarchy reversal on each k, and the published table with its growth observations."""
    k_values = list(k_values)
    partitions, summary = reproduce_table(2, k_values, threads=threads)
    scope = f"q=2, k in {k_values[0]}..{k_values[-1]}"
    results = [
        _aggregate("hierarchy-reversal", CheckKind.INVARIANT, scope,
                   (None if p.hierarchy_reversed else f"k={p.k}" for p in partitions)),
        _aggregate("interval-order", CheckKind.INVARIANT, scope,
                   (None if p.split_moment <= p.first_crossing <= p.last_crossing else f"k={p.k}"
                    for p in partitions)),
    ]

    table = [
        None if (p.first_crossing, p.last_crossing) == PUBLISHED_TABLE[p.k]
        else f"k={p.k}: ({p.first_crossing}, {p.last_crossing}) vs {PUBLISHED_TABLE[p.k]}"
        for p in partitions if p.k in PUBLISHED_TABLE
    ]
    if table:
        results.append(_aggregate("published-table", CheckKind.PUBLISHED_CLAIM, scope, table))
    results.append(_aggregate(
        "beginning-growth", CheckKind.PUBLISHED_CLAIM, scope,
        (None if ratio >= 1.8 else f"k={k}: {ratio:.3f}"
         for k, ratio in summary["growth_ratios"] if k >= 5),
    ))
    results.append(_aggregate(
        "short-outlasts-intermediate", CheckKind.PUBLISHED_CLAIM, scope,
        (None if p.short_length > p.intermediate_length
         else f"k={p.k}: {p.short_length} <= {p.intermediate_length}"
         for p in partitions if p.k >= 4),
    ))
    return results


def tower_suite(k_max: int, threads: Optional[int] = None) -> List[CheckResult]:
    def run() -> List[CheckResult]:
        outcomes = []
        for k in range(2, k_max + 1):
            ranking = tower_rank(2, k, threads=threads)
            overlap_free = ranking.optimal and all(c.cor.s == 0 for c in ranking.optimal)
            outcomes.append(None if overlap_free else f"k={k}")
        return [_aggregate("optimal-tower", CheckKind.INVARIANT, f"q=2, k<={k_max}", outcomes)]

    return _guarded("optimal-tower", f"q=2, k<={k_max}", run)


def schedule_suite(k_max: int, threads: Optional[int] = None) -> List[CheckResult]:
    """Greedy schedules for q = 2, k <= k_max at horizon 10k, and the one-hole reduction."""
    scope = f"q=2, k<={k_max}, horizon 10k"

    def run() -> List[CheckResult]:
        starts, dominance, reduction = [], [], []
        for k in range(1, k_max + 1):
            horizon = 10 * k
            schedule = greedy_schedule(2, k, horizon, threads=threads)
            minimal = correlation_classes(2, k)[0].cor.value
            starts.append(None if schedule.segments[0].cor_value == minimal else f"k={k}")

            evaluation = schedule_survival(schedule, threads=threads)
            dominance.append(None if evaluation.dominates_static else f"k={k}")

            for cls in correlation_classes(2, k):
                single = schedule_survival(constant_schedule(cls.representative, horizon), threads=threads)
                static = single.static_survivals[cls.representative]
                reduction.append(
                    None if single.scheduled_survival.values == static.values
                    else f"{cls.representative}"
                )
        return [
            _aggregate("schedule-starts-minimal", CheckKind.INVARIANT, scope, starts),
            _aggregate("one-hole-reduction", CheckKind.INVARIANT, scope, reduction),
            _aggregate("greedy-beats-static", CheckKind.PUBLISHED_CLAIM, scope, dominance),
        ]

    return _guarded("switch-at-crossing", scope, run)


def oracle_suite(cases: Iterable[Tuple[int, int, int]]) -> List[CheckResult]:
    """compute_series against exhaustive enumeration for (q, k_max, n_max) sweeps."""
    results = []
    for q, k_max, n_max in cases:
        outcomes = []
        for k in range(1, k_max + 1):
            for w in _all_words(q, k):
                mismatches = oracle_mismatches(w, n_max)
                outcomes.append(None if not mismatches else f"{w}: {mismatches[0]}")
        results.append(_aggregate(
            "enumeration-equivalence", CheckKind.INVARIANT, f"q={q}, k<={k_max}, n<={n_max}", outcomes
        ))
    return results


def simulation_suite(
    texts: Iterable[str],
    trials: int = 10 ** 6,
    horizon: int = 40,
    seed: int = 7,
    threads: Optional[int] = None
) -> List[CheckResult]:
    """Seeded Monte Carlo histograms against the exact hitting curve, within 4 sigma per bin."""
    outcomes = []
    for text in texts:
        w = Word.parse(text)
        empirical = monte_carlo_hits(w, trials, horizon, seed, threads=threads)
        exact = hit_curve(compute_series(w, max(horizon - 1 + w.k, 2 * w.k)))
        violations = binomial_consistency(empirical, exact)
        outcomes.append(None if not violations else f"{w}: t={violations[0][0]}")
    scope = f"{trials} trials, horizon {horizon}, seed {seed}"
    return [_aggregate("simulation-agreement", CheckKind.INVARIANT, scope, outcomes)]


def run_suite(level: CheckLevel = CheckLevel.QUICK, threads: Optional[int] = None) -> SuiteReport:
    """Run the verification suite.

    The quick level covers binary words up to k = 6 and crossings up to k = 5;
    the full level covers the exhaustive sweeps up to k = 8, the structural
    propositions up to k = 12 for q = 2, the closure property up to k = 12 for
    q = 2 and q = 3, the published table and a Monte Carlo run of 10^6 orbits
    for 11 and 1000.

    Args:
        level: CheckLevel.QUICK or CheckLevel.FULL
        threads: Worker count

    Returns:
        The suite report; ``report.ok`` is False when an invariant failed

    Raises:
        HorizonExhausted: If a crossing lies beyond the horizon cap
    """
    report = SuiteReport(level=level)
    full = level == CheckLevel.FULL

    report.extend(word_suite(2, 8 if full else 6, threads=threads))
    report.extend(word_suite(3, 4 if full else 3, threads=threads))
    if full:
        report.extend([closure_sweep(2, 12), closure_sweep(3, 12)])
        report.extend(structure_sweep(2, 9, 12))
        report.extend(simulation_suite(("11", "1000"), threads=threads))

    report.extend(oracle_suite(
        [(2, 4, 16), (3, 3, 10)] if full else [(2, 3, 10), (3, 2, 6)]
    ))
    report.extend(crossing_sweep(8 if full else 5, threads=threads))
    report.extend(partition_suite(range(4, 9) if full else range(4, 6), threads=threads))
    report.extend(tower_suite(6 if full else 4, threads=threads))
    report.extend(schedule_suite(5 if full else 3, threads=threads))

    logger.info(
        f"Suite {level.value}: {len(report.results)} checks, "
        f"{len(report.falsified_invariants)} invariants falsified, "
        f"{len(report.refuted_claims)} published claims refuted"
    )
    return report
