"""Tests for gridcarbon.ptdf."""
