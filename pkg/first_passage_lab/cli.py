"""Command line interface: ``fpl <command> [flags]``.

Exit codes: 0 success, 1 usage or parse error, 2 horizon exhausted,
3 invariant falsified.
"""
import argparse
import logging
import os
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from first_passage_lab import __version__
from first_passage_lab.models.enums import CheckLevel, KernelType, OutputFormat
from first_passage_lab.models.errors import (
    FirstPassageError,
    HorizonExhausted,
    InvariantFalsified,
    UsageError,
)
from first_passage_lab.models.oracle import MapKernel
from first_passage_lab.models.series import ExactProbability
from first_passage_lab.models.word import Word
from first_passage_lab.utils.correlation import (
    autocorrelation,
    correlation_classes,
    structure_profile,
)
from first_passage_lab.utils.crossing_engine import (
    IDENTICAL_DIAGNOSIS,
    PUBLISHED_TABLE,
    bound_check,
    certify_pair,
    default_horizon,
    reproduce_table,
    tower_rank,
)
from first_passage_lab.utils.escape_engine import greedy_schedule, schedule_survival
from first_passage_lab.utils.invariants import run_suite
from first_passage_lab.utils.oracle_engine import (
    binomial_consistency,
    monte_carlo_hits,
    oracle_mismatches,
)
from first_passage_lab.utils.parallel import DEFAULT_THREADS
from first_passage_lab.utils.passage_engine import compute_series, hit_curve
from first_passage_lab.utils.rendering import DEFAULT_PRECISION, OutputSink

logger = logging.getLogger(__name__)

DEFAULT_LOG_LEVEL = os.getenv("FPL_LOG_LEVEL", "WARNING")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_HORIZON = 2
EXIT_FALSIFIED = 3


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    command: str
    q: Optional[int] = None
    k_values: Tuple[int, ...] = ()
    words: Tuple[str, ...] = ()
    horizon: Optional[int] = None
    seed: int = 0
    trials: int = 100000
    output_format: OutputFormat = OutputFormat.CSV
    output: Optional[str] = None
    precision: int = DEFAULT_PRECISION
    threads: int = DEFAULT_THREADS
    level: CheckLevel = CheckLevel.QUICK
    kernel: Optional[KernelType] = None

    @property
    def alphabet(self) -> int:
        return self.q or 2

    @property
    def k(self) -> int:
        return self.k_values[0]


def parse_k(text: str) -> Tuple[int, ...]:
    """Parse ``--k`` as a single length or an inclusive range ``a..b``."""
    try:
        if ".." in text:
            low, high = (int(part) for part in text.split("..", 1))
        else:
            low = high = int(text)
    except ValueError:
        raise UsageError(f"--k expects an integer or a range a..b, got {text!r}")
    if low < 1 or high < low:
        raise UsageError(f"Invalid word length range {text!r}")
    return tuple(range(low, high + 1))


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.CSV.value)
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="Decimal digits for probabilities")
    common.add_argument("--output", help="Write to this file instead of stdout")
    common.add_argument("--threads", type=int, default=DEFAULT_THREADS)
    common.add_argument("--log-level", default=DEFAULT_LOG_LEVEL)

    parser = _ArgumentParser(prog="fpl", description="Exact first passage statistics for fair-dice-like systems")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text)

    for name, help_text in (
        ("cor", "Autocorrelation of a word"),
        ("profile", "Structural indices of a word"),
        ("series", "Exact a, h, H series and probabilities"),
        ("compare", "Crossing of the hitting curves of two words"),
    ):
        p = add(name, help_text)
        p.add_argument("words", nargs="*")
        p.add_argument("--word", action="append", default=[])
        p.add_argument("--q", type=int)
        p.add_argument("--horizon", type=int)

    for name, help_text in (
        ("classes", "Correlation classes of a refinement"),
        ("partition", "Short, intermediate and long time intervals"),
        ("towers", "Ranking of first-return towers"),
        ("schedule", "Greedy hole switching and its survival"),
    ):
        p = add(name, help_text)
        p.add_argument("--q", type=int, default=2)
        p.add_argument("--k", required=True)
        p.add_argument("--horizon", type=int)

    p = add("check", "Run the verification suite")
    p.add_argument("--level", choices=[lv.value for lv in CheckLevel], default=CheckLevel.QUICK.value)

    p = add("oracle-check", "Compare exact series with exhaustive enumeration")
    p.add_argument("words", nargs="*")
    p.add_argument("--word", action="append", default=[])
    p.add_argument("--q", type=int)
    p.add_argument("--k")
    p.add_argument("--horizon", type=int, help="Largest string length to enumerate")

    p = add("simulate", "Monte Carlo first hitting times")
    p.add_argument("words", nargs="*")
    p.add_argument("--word", action="append", default=[])
    p.add_argument("--q", type=int)
    p.add_argument("--horizon", type=int)
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kernel", choices=[kt.value for kt in KernelType])
    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    """Validate parsed flags before any computation.

    Raises:
        UsageError: If a flag is out of range or required words are missing
    """
    words = tuple(getattr(args, "words", []) or []) + tuple(getattr(args, "word", []) or [])
    k_text = getattr(args, "k", None)
    config = RunConfig(
        command=args.command,
        q=getattr(args, "q", None),
        k_values=parse_k(k_text) if k_text else (),
        words=words,
        horizon=getattr(args, "horizon", None),
        seed=getattr(args, "seed", 0),
        trials=getattr(args, "trials", 100000),
        output_format=OutputFormat(args.format),
        output=args.output,
        precision=args.precision,
        threads=args.threads,
        level=CheckLevel(getattr(args, "level", CheckLevel.QUICK.value)),
        kernel=KernelType(args.kernel) if getattr(args, "kernel", None) else None,
    )

    if config.q is not None and config.q < 2:
        raise UsageError(f"--q must be at least 2, got {config.q}")
    if config.horizon is not None and config.horizon < 1:
        raise UsageError(f"--horizon must be positive, got {config.horizon}")
    if config.trials < 1:
        raise UsageError(f"--trials must be positive, got {config.trials}")
    if config.precision < 0:
        raise UsageError(f"--precision must be non-negative, got {config.precision}")
    if config.threads < 1:
        raise UsageError(f"--threads must be positive, got {config.threads}")

    needed = {"cor": 1, "profile": 1, "series": 1, "compare": 2, "simulate": 1}
    if config.command in needed and len(config.words) != needed[config.command]:
        raise UsageError(f"{config.command} expects {needed[config.command]} word(s), got {len(config.words)}")
    if config.command in ("partition", "towers", "schedule", "classes") and not config.k_values:
        raise UsageError(f"{config.command} requires --k")
    if config.command == "schedule" and len(config.k_values) > 1:
        raise UsageError("schedule takes a single word length, not a range")
    if config.command == "classes" and config.horizon is not None:
        raise UsageError("classes does not take --horizon")
    if config.command == "oracle-check" and not config.words and not config.k_values:
        raise UsageError("oracle-check expects words or --k")
    return config


def _words(config: RunConfig) -> List[Word]:
    """Parse the positional words over one alphabet.

    Without ``--q`` the alphabet is the smallest one that fits every word.
    """
    words = [Word.parse(text, q=config.q) for text in config.words]
    if config.q is None and words:
        q = max(w.q for w in words)
        words = [Word(symbols=w.symbols, q=q) for w in words]
    return words


def cmd_cor(config: RunConfig, sink: OutputSink) -> int:
    (w,) = _words(config)
    cor = autocorrelation(w)
    table = sink.table("autocorrelation", ["word", "cor", "value", "s"])
    table.add(str(w), str(cor), cor.value, cor.s)
    return EXIT_OK


def cmd_profile(config: RunConfig, sink: OutputSink) -> int:
    (w,) = _words(config)
    profile = structure_profile(w)
    table = sink.table("profile", ["word", "cor", "s", "I", "d", "S", "T", "per"])
    table.add(
        str(w),
        str(profile.cor),
        profile.s,
        sorted(profile.I, reverse=True),
        profile.d,
        sorted(profile.S, reverse=True),
        [f"{i}:{profile.T[i]}" for i in sorted(profile.T, reverse=True)],
        profile.per,
    )
    return EXIT_OK


def cmd_series(config: RunConfig, sink: OutputSink) -> int:
    (w,) = _words(config)
    horizon = max(config.horizon or default_horizon(w.k), 2 * w.k)
    series = compute_series(w, horizon)
    table = sink.table("series", ["n", "a", "h", "H", "P_hit", "P_surv", "P_ret"])
    for n in range(horizon + 1):
        table.add(
            n,
            series.a[n],
            series.h[n],
            series.H[n],
            ExactProbability(series.h[n], n, w.q),
            ExactProbability(series.a[n], n, w.q),
            ExactProbability(series.H[n], n, w.q) if n > w.k else None,
        )
    return EXIT_OK


def cmd_compare(config: RunConfig, sink: OutputSink) -> int:
    w, w_prime = _words(config)
    report = certify_pair(w, w_prime, horizon=config.horizon)
    table = sink.table("crossing", [
        "w", "w_prime", "N", "crossing_time", "coincidence_end", "certified",
        "certificate_window", "sign_changes", "bound_ok", "horizon", "diagnosis",
    ])
    table.add(
        str(report.w),
        str(report.w_prime),
        report.N,
        report.crossing_time,
        report.coincidence_end,
        report.certified,
        report.certificate_window,
        report.sign_changes,
        bound_check(report),
        report.horizon_used,
        report.diagnosis,
    )
    if report.identical:
        logger.info(IDENTICAL_DIAGNOSIS)
    return EXIT_OK


def cmd_classes(config: RunConfig, sink: OutputSink) -> int:
    table = sink.table("classes", ["k", "cor", "value", "s", "per", "size", "representative", "members"])
    for k in config.k_values:
        for cls in correlation_classes(config.alphabet, k):
            table.add(
                k, str(cls.cor), cls.cor.value, cls.cor.s, cls.per, len(cls.members),
                str(cls.representative), [str(m) for m in cls.members],
            )
    return EXIT_OK


def cmd_partition(config: RunConfig, sink: OutputSink) -> int:
    if config.k_values[0] < 2:
        raise UsageError("partition needs k >= 2")
    partitions, summary = reproduce_table(
        config.alphabet, config.k_values, horizon=config.horizon, threads=config.threads
    )
    table = sink.table("partition", [
        "k", "first_crossing", "last_crossing", "split_moment", "short_length",
        "intermediate_length", "hierarchy_reversed", "horizon", "published_first", "published_last",
    ])
    for p in partitions:
        published = PUBLISHED_TABLE.get(p.k) if config.alphabet == 2 else None
        table.add(
            p.k, p.first_crossing, p.last_crossing, p.split_moment, p.short_length,
            p.intermediate_length, p.hierarchy_reversed, p.horizon_used,
            published[0] if published else None, published[1] if published else None,
        )
    if summary["compared"] and summary["offset"] is None:
        logger.warning("Reproduced moments do not match the published table by a uniform offset")
    return EXIT_OK


def cmd_towers(config: RunConfig, sink: OutputSink) -> int:
    ranked = sink.table("towers", ["k", "rank", "representative", "cor", "per", "optimal"])
    relations = sink.table("better_than", ["k", "better", "worse", "witness"])
    for k in config.k_values:
        if k < 2:
            raise UsageError("towers needs k >= 2")
        ranking = tower_rank(config.alphabet, k, horizon=config.horizon, threads=config.threads)
        for rank, cls in enumerate(ranking.classes, start=1):
            ranked.add(k, rank, str(cls.representative), str(cls.cor), cls.per, cls in ranking.optimal)
        for rel in ranking.relations:
            relations.add(k, str(rel.better), str(rel.worse), rel.witness)
    return EXIT_OK


def cmd_schedule(config: RunConfig, sink: OutputSink) -> int:
    k = config.k
    horizon = config.horizon or 10 * k
    schedule = greedy_schedule(config.alphabet, k, horizon, threads=config.threads)
    evaluation = schedule_survival(schedule, threads=config.threads)

    segments = sink.table("segments", ["t_start", "t_end", "word", "cor_value"])
    for segment in schedule.segments:
        segments.add(segment.t_start, segment.t_end, str(segment.word), segment.cor_value)

    statics = list(evaluation.static_survivals.items())
    survival = sink.table("survival", ["n", "scheduled"] + [f"static_{w}" for w, _ in statics])
    for n, value in evaluation.scheduled_survival.items():
        survival.add(n, value, *(curve[n] for _, curve in statics))
    return EXIT_OK


def cmd_check(config: RunConfig, sink: OutputSink) -> int:
    report = run_suite(config.level, threads=config.threads)
    table = sink.table("checks", ["name", "kind", "passed", "scope", "detail"])
    for r in report.results:
        table.add(r.name, r.kind.value, r.passed, r.subject, r.detail)
    return EXIT_OK if report.ok else EXIT_FALSIFIED


def cmd_oracle_check(config: RunConfig, sink: OutputSink) -> int:
    words = _words(config)
    for k in config.k_values:
        words.extend(cls_word for cls in correlation_classes(config.alphabet, k) for cls_word in cls.members)

    table = sink.table("oracle", ["word", "n_max", "mismatches", "first_mismatch"])
    failed = False
    for w in words:
        n_max = config.horizon or 2 * w.k + 4
        mismatches = oracle_mismatches(w, n_max)
        failed = failed or bool(mismatches)
        table.add(str(w), n_max, len(mismatches), mismatches[0] if mismatches else None)
    return EXIT_FALSIFIED if failed else EXIT_OK


def cmd_simulate(config: RunConfig, sink: OutputSink) -> int:
    (w,) = _words(config)
    horizon = config.horizon or 10 * w.k
    kernel = MapKernel(config.kernel, w.q) if config.kernel else None
    empirical = monte_carlo_hits(
        w, config.trials, horizon, config.seed, kernel=kernel, threads=config.threads
    )
    exact = hit_curve(compute_series(w, max(horizon - 1 + w.k, 2 * w.k)))
    outside = {t for t, *_ in binomial_consistency(empirical, exact)}

    table = sink.table("simulation", ["t", "hits", "frequency", "exact", "within_4_sigma"])
    for t in range(horizon):
        table.add(t, empirical.histogram[t], f"{empirical.frequency(t):.6f}", exact[t], t not in outside)
    summary = sink.table("summary", ["word", "trials", "seed", "generator", "kernel", "censored"])
    summary.add(str(w), empirical.trials, empirical.seed, empirical.generator,
                str(kernel) if kernel else None, empirical.censored)
    return EXIT_OK


HANDLERS = {
    "cor": cmd_cor,
    "profile": cmd_profile,
    "series": cmd_series,
    "compare": cmd_compare,
    "classes": cmd_classes,
    "partition": cmd_partition,
    "towers": cmd_towers,
    "schedule": cmd_schedule,
    "check": cmd_check,
    "oracle-check": cmd_oracle_check,
    "simulate": cmd_simulate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(
            level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
            format="%(levelname)s:%(name)s:%(message)s",
        )
        config = build_config(args)
        sink = OutputSink(config.output_format, config.precision, command=config.command)
        code = HANDLERS[config.command](config, sink)
        sink.write(config.output)
        return code
    except HorizonExhausted as e:
        print(f"error: {e} (attempted horizon {e.horizon})", file=sys.stderr)
        return EXIT_HORIZON
    except InvariantFalsified as e:
        print(f"error: invariant {e.check or ''} falsified: {e}", file=sys.stderr)
        return EXIT_FALSIFIED
    except (FirstPassageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
