"""Tests for gridcarbon.fleet."""
