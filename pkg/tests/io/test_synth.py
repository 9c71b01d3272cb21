"""Tests for synthetic study systems."""

import numpy as np
import pytest


class TestSynthCase:
    """Tests for the network templates."""

    def test_ring_three(self):
        """ring(3) is the canonical triangle."""
        from gridcarbon.io import synth_case

        case = synth_case("ring", 3)
        assert len(case.buses) == 3
        assert [(ln.from_bus, ln.to_bus) for ln in case.lines] == [("1", "2"), ("2", "3"), ("1", "3")]
        assert all(ln.reactance_pu == 1.0 for ln in case.lines)
        assert case.slack_buses == ("3",)

    def test_deterministic(self):
        """The same seed gives the same case."""
        from gridcarbon.io import synth_case

        assert synth_case("mesh", 12, seed=5) == synth_case("mesh", 12, seed=5)
        assert synth_case("mesh", 12, seed=5) != synth_case("mesh", 12, seed=6)

    def test_star(self):
        """Every star line touches bus 1."""
        from gridcarbon.io import synth_case

        case = synth_case("star", 6)
        assert all(ln.from_bus == "1" for ln in case.lines)
        assert len(case.lines) == 5

    def test_mesh_is_connected(self):
        """Random meshes form one island."""
        from gridcarbon.grid import islands
        from gridcarbon.io import synth_case

        for seed in range(10):
            assert len(islands(synth_case("mesh", 15, seed))) == 1

    def test_two_area(self):
        """Two areas are joined by a single tie-line."""
        from gridcarbon.grid import validate_case
        from gridcarbon.io import synth_case

        case = synth_case("two-area", 4)
        assert [b.id for b in case.buses] == ["A1", "A2", "B1", "B2"]
        ties = [ln for ln in case.lines if ln.id == "TIE"]
        assert len(ties) == 1
        assert (ties[0].from_bus, ties[0].to_bus) == ("A2", "B1")
        # Area-B peak is 60 + 100 MW; midday solar alone overloads the tie.
        solar = next(g for g in case.generators if g.id == "SOLAR-A")
        assert ties[0].capacity_mw == pytest.approx(0.45 * 160.0)
        assert solar.capacity_mw * max(solar.capability_profile) > ties[0].capacity_mw
        assert {ld.bus[0] for ld in case.loads} == {"B"}
        assert validate_case(case).valid

    def test_cases_validate(self):
        """Every template yields a valid case."""
        from gridcarbon.grid import validate_case
        from gridcarbon.io import TEMPLATES, synth_case

        for template in TEMPLATES:
            assert validate_case(synth_case(template, 7, seed=1)).valid, template

    def test_fuel_totals_are_whole_gallons(self):
        """County fuel is split in whole gallons."""
        from gridcarbon.io import synth_case

        case = synth_case("ring", 7)
        gallons = [c.annual_gallons for c in case.counties]
        assert sum(gallons) == 7_000_000.0
        assert all(g.is_integer() for g in gallons)

    def test_invalid_arguments(self):
        """Unknown templates and tiny cases are refused."""
        from gridcarbon.errors import InputError
        from gridcarbon.io import synth_case

        with pytest.raises(InputError):
            synth_case("torus", 4)
        with pytest.raises(InputError):
            synth_case("ring", 1)


class TestSynthProfiles:
    """Tests for synthetic availability and load curves."""

    def test_solar_is_zero_at_night(self):
        """The solar bell is zero before 06:00 and after 18:00."""
        from gridcarbon.io.synth import solar_profile

        profile = solar_profile(24)
        assert profile[:6] == (0.0,) * 6
        assert profile[18:] == (0.0,) * 6
        assert max(profile) <= 1.0

    def test_wind_profile_range(self):
        """Wind availability stays within [0, 1]."""
        from gridcarbon.io.synth import wind_profile

        profile = wind_profile(np.random.default_rng(0), 48)
        assert len(profile) == 48
        assert all(0.0 <= v <= 1.0 for v in profile)

    def test_curves_peak_in_july(self):
        """Curves never exceed 1 and reach it in July."""
        from gridcarbon.io import synth_case, synth_curves

        case = synth_case("two-area", 4)
        curves = synth_curves(case)
        assert list(curves) == ["RB"]
        assert max(float(c.max()) for c in curves["RB"].values()) <= 1.0
        assert curves["RB"][7].max() == pytest.approx(1.0)
