"""Tests for gridcarbon.io."""
