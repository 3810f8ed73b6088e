#!/usr/bin/env python
"""
Write the hitting probability curves of the three binary classes of length 4 and
of three words of length 8, one CSV per group, ready for plotting.

Usage:
    python scripts/reproduce_figures.py [--output-dir figures] [--horizon 120]
"""

import argparse
import logging
import os
import sys

GROUPS = {
    "length4": ("1111", "1010", "1000"),
    "length8": ("10101010", "10010010", "11100111"),
}

def main():
    parser = argparse.ArgumentParser(description="Export hitting probability curves")
    parser.add_argument("--output-dir", default="figures")
    parser.add_argument("--horizon", type=int, help="Last time step, default 30k")
    parser.add_argument("--precision", type=int, default=12)
    args = parser.parse_args()

    sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))
    from first_passage_lab.models import OutputFormat, Word
    from first_passage_lab.utils.crossing_engine import certify_pair
    from first_passage_lab.utils.passage_engine import compute_series, hit_curve
    from first_passage_lab.utils.rendering import OutputSink

    logging.basicConfig(level=logging.INFO, format="%(levelname)s:%(name)s:%(message)s")
    os.makedirs(args.output_dir, exist_ok=True)

    for name, texts in GROUPS.items():
        words = [Word.parse(text) for text in texts]
        k = words[0].k
        horizon = args.horizon or 30 * k
        curves = [hit_curve(compute_series(w, horizon + k)) for w in words]

        sink = OutputSink(OutputFormat.CSV, args.precision, command="figures")
        table = sink.table("hit_curves", ["t"] + [f"P_{w}" for w in words])
        for t in range(horizon + 1):
            table.add(t, *(curve[t] for curve in curves))

        crossings = sink.table("crossings", ["w", "w_prime", "N", "crossing_time"])
        for i, w in enumerate(words):
            for w_prime in words[i + 1:]:
                report = certify_pair(w, w_prime)
                crossings.add(str(report.w), str(report.w_prime), report.N, report.crossing_time)

        sink.write(os.path.join(args.output_dir, f"{name}.csv"))

if __name__ == "__main__":
    main()
