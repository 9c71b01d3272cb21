"""Tests for gridcarbon.lp."""
