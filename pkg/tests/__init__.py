"""Tests for the first-passage-lab package."""
