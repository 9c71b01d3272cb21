"""Tests for gridcarbon.dispatch."""
