"""Tests for gridcarbon.grid."""
