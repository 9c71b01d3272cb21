"""Tests for fleet energy, tailpipe emissions and fuel allocation."""

import logging

import pytest


class TestFleetAssumptions:
    """Tests for fleet factors."""

    def test_defaults_are_consistent(self, caplog):
        """The default factors agree with the MPGe ratio."""
        from gridcarbon.fleet import FleetAssumptions

        with caplog.at_level(logging.WARNING, logger="gridcarbon.fleet"):
            FleetAssumptions()
        assert caplog.records == []

    def test_inconsistent_factor_warns(self, caplog):
        """A kWh-per-gallon far from the MPGe ratio is logged."""
        from gridcarbon.fleet import FleetAssumptions

        with caplog.at_level(logging.WARNING, logger="gridcarbon.fleet"):
            FleetAssumptions(kwh_per_gallon_ev=12.0)
        assert "MPGe" in caplog.text

    def test_penetration_range(self):
        """Penetration outside [0, 1] is a configuration error."""
        from gridcarbon.errors import ConfigError
        from gridcarbon.fleet import FleetAssumptions

        with pytest.raises(ConfigError):
            FleetAssumptions(penetration=1.5)

    def test_with_penetration(self):
        """Copies keep every factor but the penetration."""
        from gridcarbon.fleet import FleetAssumptions

        copy = FleetAssumptions(kg_co2_per_gallon=9.1).with_penetration(0.3)
        assert copy.penetration == 0.3
        assert copy.kg_co2_per_gallon == 9.1


class TestCountyDemand:
    """Tests for per-county charging energy."""

    def test_daily_energy(self):
        """365,000 gallons a year at full penetration is 8.9 MWh a day."""
        from gridcarbon.fleet import FleetAssumptions, county_ev_demand

        demand = county_ev_demand(365_000.0, FleetAssumptions(penetration=1.0), fips="C1")
        assert demand.fips == "C1"
        assert demand.e_c_daily_mwh == pytest.approx(8.9)
        assert demand.icv_gallons_daily == pytest.approx(0.0)

    def test_county_override(self):
        """A county penetration overrides the fleet-wide value."""
        from gridcarbon.fleet import FleetAssumptions, county_ev_demand

        demand = county_ev_demand(365_000.0, FleetAssumptions(penetration=1.0), penetration=0.25)
        assert demand.e_c_daily_mwh == pytest.approx(8.9 * 0.25)
        assert demand.icv_gallons_daily == pytest.approx(750.0)

    def test_invalid_override(self):
        """Overrides outside [0, 1] are refused."""
        from gridcarbon.errors import InputError
        from gridcarbon.fleet import FleetAssumptions, county_ev_demand

        with pytest.raises(InputError):
            county_ev_demand(1.0, FleetAssumptions(), fips="C1", penetration=-0.1)

    def test_case_demands(self):
        """Case demands follow county order and feed the demand map."""
        from gridcarbon.fleet import FleetAssumptions, case_county_demands, ev_demand_map
        from tests.cases import single_generator_case

        demands = case_county_demands(single_generator_case(0.0), FleetAssumptions(penetration=0.5))
        assert ev_demand_map(demands) == {"C1": pytest.approx(4.45)}


class TestEmissions:
    """Tests for tailpipe and fleet totals."""

    def test_national_baseline(self):
        """194 billion gallons emit about 1.7266 billion tonnes."""
        from gridcarbon.fleet import (
            FleetAssumptions,
            county_ev_demand,
            icv_emissions_annual,
            tailpipe_tonnes,
        )

        assert tailpipe_tonnes(194e9) == pytest.approx(1.7266e9)
        demand = county_ev_demand(194e9, FleetAssumptions())
        assert icv_emissions_annual([demand]) == pytest.approx(1.7266e9)

    def test_vehicle_total(self):
        """Fleet emissions add charging and tailpipe parts."""
        from gridcarbon.fleet import vehicle_operational_emissions

        assert vehicle_operational_emissions(2.0, 3.5) == 5.5

    def test_negative_emissions(self):
        """Negative inputs are refused."""
        from gridcarbon.errors import InputError
        from gridcarbon.fleet import vehicle_operational_emissions

        with pytest.raises(InputError):
            vehicle_operational_emissions(-1.0, 3.0)

    def test_growth_and_reduction(self):
        """Growth compounds yearly; reductions are percentages."""
        from gridcarbon.fleet import LOAD_GROWTH_RATE, project_growth, reduction_percent

        assert project_growth(100.0, LOAD_GROWTH_RATE, 2) == pytest.approx(100.0 * 1.0055**2)
        assert reduction_percent(75.0, 100.0) == pytest.approx(25.0)
        assert reduction_percent(1.0, 0.0) == 0.0


class TestFuelAllocation:
    """Tests for population-weighted fuel splits."""

    def test_integral_total_is_whole_gallons(self):
        """10 gallons over three equal counties split 4/3/3."""
        from gridcarbon.fleet import allocate_state_fuel
        from gridcarbon.grid import County

        counties = [County(f, "S", population=1.0) for f in ("A", "B", "C")]
        shares = allocate_state_fuel(10.0, counties)
        assert shares == {"A": 4.0, "B": 3.0, "C": 3.0}

    def test_shares_sum_to_total(self):
        """Fractional totals are conserved."""
        from gridcarbon.fleet import allocate_state_fuel
        from gridcarbon.grid import County

        counties = [County("A", "S", 2.0), County("B", "S", 5.0), County("C", "S", 11.0)]
        shares = allocate_state_fuel(1234.5, counties)
        assert sum(shares.values()) == pytest.approx(1234.5, abs=1e-9)
        assert shares["C"] > shares["B"] > shares["A"]

    def test_zero_population(self):
        """A state without population cannot be split."""
        from gridcarbon.errors import EmptyState
        from gridcarbon.fleet import allocate_state_fuel
        from gridcarbon.grid import County

        with pytest.raises(EmptyState):
            allocate_state_fuel(10.0, [County("A", "S", 0.0)])

    def test_allocate_by_state(self):
        """Counties of states without data receive nothing."""
        from gridcarbon.fleet import allocate_fuel
        from gridcarbon.grid import County

        counties = [County("A", "S1", 1.0), County("B", "S1", 3.0), County("C", "S2", 1.0)]
        gallons = allocate_fuel(counties, {"S1": 400.0})
        assert gallons == {"A": 100.0, "B": 300.0, "C": 0.0}

    def test_state_without_counties(self):
        """Fuel data for an unknown state is refused."""
        from gridcarbon.errors import EmptyState
        from gridcarbon.fleet import allocate_fuel
        from gridcarbon.grid import County

        with pytest.raises(EmptyState):
            allocate_fuel([County("A", "S1", 1.0)], {"S9": 1.0})

    def test_nearby_totals_split_alike(self):
        """1000 and 1000.0000001 gallons follow one rule and differ by the residue only."""
        from gridcarbon.fleet import allocate_state_fuel
        from gridcarbon.grid import County

        counties = [County(f, "S", population=1.0) for f in ("A", "B", "C")]
        whole = allocate_state_fuel(1000.0, counties)
        nudged = allocate_state_fuel(1000.0000001, counties)

        assert whole == {"A": 334.0, "B": 333.0, "C": 333.0}
        assert sum(nudged.values()) == pytest.approx(1000.0000001, abs=1e-9)
        for fips in whole:
            assert nudged[fips] == pytest.approx(whole[fips], abs=1e-6)
        assert sum(not share.is_integer() for share in nudged.values()) == 1

    def test_fractional_total_rounds_like_integral_part(self):
        """1234.5 gallons split 137 / 343 / 754.5 by remainders .17, .92 and .42."""
        from gridcarbon.fleet import allocate_state_fuel
        from gridcarbon.grid import County

        counties = [County("A", "S", 2.0), County("B", "S", 5.0), County("C", "S", 11.0)]
        assert allocate_state_fuel(1234.5, counties) == {
            "A": 137.0,
            "B": 343.0,
            "C": pytest.approx(754.5),
        }


class TestPenetrationProperties:
    """County energy and tailpipe fuel as penetration varies."""

    @pytest.mark.parametrize(("template", "seed"), [("mesh", 0), ("mesh", 5), ("two-area", 1), ("two-area", 3)])
    def test_energy_is_linear_in_penetration(self, template, seed):
        """Charging energy scales with penetration; fuel left scales with its complement."""
        from gridcarbon.fleet import FleetAssumptions, case_county_demands
        from gridcarbon.io import synth_case

        case = synth_case(template, 8, seed)
        full = case_county_demands(case, FleetAssumptions(penetration=1.0))
        none = case_county_demands(case, FleetAssumptions(penetration=0.0))
        for p in (0.1, 0.35, 0.8):
            partial = case_county_demands(case, FleetAssumptions(penetration=p))
            for d, d1, d0 in zip(partial, full, none, strict=True):
                assert d.e_c_daily_mwh == pytest.approx(p * d1.e_c_daily_mwh, rel=1e-12)
                assert d.icv_gallons_daily == pytest.approx((1.0 - p) * d0.icv_gallons_daily, rel=1e-12)

    @pytest.mark.parametrize(("template", "seed"), [("mesh", 2), ("two-area", 4)])
    def test_county_energy_is_monotone(self, template, seed):
        """Raising penetration never lowers any county's charging energy."""
        from gridcarbon.fleet import FleetAssumptions, case_county_demands, icv_emissions_annual
        from gridcarbon.io import synth_case

        case = synth_case(template, 10, seed)
        levels = [k / 10.0 for k in range(11)]
        rows = [case_county_demands(case, FleetAssumptions(penetration=p)) for p in levels]
        for lower, higher in zip(rows, rows[1:]):
            for a, b in zip(lower, higher, strict=True):
                assert b.e_c_daily_mwh >= a.e_c_daily_mwh
                assert b.icv_gallons_daily <= a.icv_gallons_daily
        tailpipe = [icv_emissions_annual(r) for r in rows]
        assert all(a >= b for a, b in zip(tailpipe, tailpipe[1:]))
        assert tailpipe[-1] == pytest.approx(0.0)
