#!/usr/bin/env python
"""
Check if the first-passage-lab package is installed correctly.

Usage:
    python scripts/check_installation.py
"""

import importlib
import sys

def check_module(module_name):
    """Check if a module can be imported."""
    try:
        importlib.import_module(module_name)
        print(f"✅ {module_name} imported successfully")
        return True
    except ImportError as e:
        print(f"❌ Failed to import {module_name}: {e}")
        return False

def main():
    """Check if the package is installed correctly."""
    print("Checking if first-passage-lab is installed correctly...")

    modules = [
        "first_passage_lab",
        "first_passage_lab.cli",
        "first_passage_lab.models",
        "first_passage_lab.models.word",
        "first_passage_lab.models.series",
        "first_passage_lab.models.crossing",
        "first_passage_lab.models.schedule",
        "first_passage_lab.models.oracle",
        "first_passage_lab.models.checks",
        "first_passage_lab.models.enums",
        "first_passage_lab.models.errors",
        "first_passage_lab.utils",
        "first_passage_lab.utils.correlation",
        "first_passage_lab.utils.passage_engine",
        "first_passage_lab.utils.crossing_engine",
        "first_passage_lab.utils.escape_engine",
        "first_passage_lab.utils.oracle_engine",
        "first_passage_lab.utils.invariants",
        "first_passage_lab.utils.parallel",
        "first_passage_lab.utils.rendering",
    ]

    all_passed = all(check_module(module) for module in modules)

    # A tiny end-to-end computation catches a broken numpy install
    try:
        from first_passage_lab.models import Word
        from first_passage_lab.utils.crossing_engine import compare_pair

        report = compare_pair(Word.parse("11"), Word.parse("10"))
        if report.N == 7:
            print("✅ crossing of 11 and 10 found at N = 7")
        else:
            print(f"❌ crossing of 11 and 10 found at N = {report.N}, expected 7")
            all_passed = False
    except Exception as e:
        print(f"❌ Sample computation failed: {e}")
        all_passed = False

    # Print summary
    if all_passed:
        print("\n✅ All checks passed! The package is installed correctly.")
    else:
        print("\n❌ Some checks failed. Please fix the issues above.")
        sys.exit(1)

if __name__ == "__main__":
    main()
