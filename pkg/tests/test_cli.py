import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from unittest.mock import patch

from first_passage_lab.cli import EXIT_FALSIFIED, EXIT_HORIZON, EXIT_OK, EXIT_USAGE, main, parse_k
from first_passage_lab.models import (
    CheckKind,
    CheckLevel,
    CheckResult,
    HorizonExhausted,
    InvariantFalsified,
    SuiteReport,
    UsageError,
)


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestCommands(unittest.TestCase):
    def test_cor(self):
        code, out, _ = run("cor", "10100101")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.splitlines(), ["word,cor,value,s", "10100101,10000101,133,3"])

        _, out, _ = run("cor", "--word", "1")
        self.assertEqual(out.splitlines()[1], "1,1,1,0")

    def test_profile(self):
        """Test that empty sets and a missing d render as empty cells."""
        _, out, _ = run("profile", "1000")
        self.assertEqual(out.splitlines()[1], "1000,1000,0,,,,,4")

    def test_series(self):
        code, out, _ = run("series", "11", "--horizon", "8")
        self.assertEqual(code, EXIT_OK)
        lines = out.splitlines()
        self.assertEqual(lines[0], "n,a,h,H,P_hit,P_surv,P_ret")
        self.assertEqual(len(lines), 10)
        self.assertEqual(lines[3], "2,3,1,-1,0.25,0.75,")
        self.assertTrue(lines[4].startswith("3,5,1,1,"))

    def test_compare(self):
        """Test the crossing row of 11 against 10."""
        code, out, _ = run("compare", "10", "11")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.splitlines()[1].startswith("11,10,7,5,2,true,7 8,1,true,"))

        _, out, _ = run("compare", "1010", "0101")
        self.assertTrue(out.splitlines()[1].endswith("identical curves (equal autocorrelation)"))

    def test_partition(self):
        code, out, _ = run("partition", "--q", "2", "--k", "4")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.splitlines()[1].startswith("4,20,26,5,15,6,true,"))
        self.assertTrue(out.splitlines()[1].endswith(",20,26"))

    def test_words_share_one_alphabet(self):
        """Test that words without --q are read over the smallest alphabet fitting all of them."""
        code, out, _ = run("compare", "10", "102")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.splitlines()[1].startswith("102,10,"))

    def test_partition_horizon(self):
        _, out, _ = run("partition", "--k", "4")
        self.assertEqual(out.splitlines()[1].split(",")[7], "48")
        _, out, _ = run("partition", "--k", "4", "--horizon", "512")
        row = out.splitlines()[1].split(",")
        self.assertEqual(row[1:3], ["20", "26"])
        self.assertEqual(row[7], "512")

    def test_classes_and_towers(self):
        _, out, _ = run("classes", "--k", "4")
        self.assertEqual(len(out.splitlines()), 5)

        code, out, _ = run("towers", "--k", "2")
        self.assertEqual(code, EXIT_OK)
        towers, relations = out.split("\n\n")
        self.assertEqual(towers.splitlines()[1], "2,1,01,10,2,true")
        self.assertEqual(relations.splitlines()[1], "2,01,00,4")

    def test_schedule(self):
        _, out, _ = run("schedule", "--k", "2", "--horizon", "40")
        segments = out.split("\n\n")[0].splitlines()
        self.assertEqual(segments[1:], ["0,5,01,2", "5,40,00,3"])

    def test_simulate_and_oracle(self):
        code, out, _ = run("simulate", "11", "--trials", "20000", "--seed", "7", "--horizon", "5")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, run("simulate", "11", "--trials", "20000", "--seed", "7", "--horizon", "5")[1])

        code, out, _ = run("oracle-check", "--k", "3", "--horizon", "8")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(out.splitlines()), 9)


class TestOutput(unittest.TestCase):
    def test_json(self):
        _, out, _ = run("cor", "10100101", "--format", "json")
        document = json.loads(out)
        self.assertEqual(document["command"], "cor")
        (table,) = document["tables"]
        self.assertEqual(table["rows"], [{"word": "10100101", "cor": "10000101", "value": "133", "s": "3"}])

        _, out, _ = run("towers", "--k", "3", "--format", "json")
        self.assertEqual(json.dumps(json.loads(out), indent=2) + "\n", out)

    def test_threads_do_not_change_output(self):
        """Test that the output is byte-identical for any worker count."""
        one = run("partition", "--k", "4..5", "--threads", "1")[1]
        many = run("partition", "--k", "4..5", "--threads", "3")[1]
        self.assertEqual(one, many)

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "cor.csv")
            code, out, _ = run("cor", "1111", "--output", path)
            self.assertEqual(code, EXIT_OK)
            self.assertEqual(out, "")
            with open(path, encoding="utf-8") as f:
                self.assertEqual(f.read(), "word,cor,value,s\n1111,1111,15,3\n")

    def test_precision(self):
        _, out, _ = run("series", "10", "--horizon", "4", "--precision", "1")
        self.assertEqual(out.splitlines()[3].split(",")[4], "0.2")


class TestExitCodes(unittest.TestCase):
    def test_usage_errors(self):
        for argv in (
            ["cor"],
            ["compare", "11"],
            ["bogus"],
            ["cor", "11", "--q", "1"],
            ["partition", "--k", "3..1"],
            ["cor", "012", "--q", "2"],
            ["simulate", "11", "--trials", "0"],
            ["schedule", "--k", "2..3"],
            ["classes", "--k", "3", "--horizon", "10"],
        ):
            code, out, err = run(*argv)
            self.assertEqual(code, EXIT_USAGE, msg=argv)
            self.assertEqual(out, "")
            self.assertTrue(err)

    def test_horizon_exhausted(self):
        with patch("first_passage_lab.cli.certify_pair", side_effect=HorizonExhausted("no crossing", 64)):
            code, _, err = run("compare", "11", "10")
        self.assertEqual(code, EXIT_HORIZON)
        self.assertIn("64", err)

    def test_falsified_invariant(self):
        """Test that a falsified invariant exits with code 3."""
        error = InvariantFalsified("series differ", check="equal-class-identity")
        with patch("first_passage_lab.cli.certify_pair", side_effect=error):
            self.assertEqual(run("compare", "11", "10")[0], EXIT_FALSIFIED)

        report = SuiteReport(level=CheckLevel.QUICK)
        report.extend([CheckResult("normalization", CheckKind.INVARIANT, False, "q=2", "1/10 fail")])
        with patch("first_passage_lab.cli.run_suite", return_value=report):
            code, out, _ = run("check")
        self.assertEqual(code, EXIT_FALSIFIED)
        self.assertIn("normalization,invariant,false", out)

    def test_parse_k(self):
        self.assertEqual(parse_k("4"), (4,))
        self.assertEqual(parse_k("4..6"), (4, 5, 6))
        with self.assertRaises(UsageError):
            parse_k("four")


if __name__ == "__main__":
    unittest.main()
