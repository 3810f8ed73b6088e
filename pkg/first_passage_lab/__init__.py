"""First Passage Lab - exact first hitting, return and survival statistics for fair-dice-like systems."""

__version__ = "0.1.0"
