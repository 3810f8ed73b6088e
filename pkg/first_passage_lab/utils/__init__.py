"""Engines computing the first passage statistics."""
