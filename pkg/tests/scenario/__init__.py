"""Tests for gridcarbon.scenario."""
