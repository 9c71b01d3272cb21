"""Tests for islands, charging sites and upgradable lines."""

import dataclasses

import pytest


class TestIslands:
    """Tests for connected components."""

    def test_connected_case_is_one_island(self):
        """A triangle forms a single island."""
        from gridcarbon.grid import islands
        from tests.cases import three_bus_ring

        assert islands(three_bus_ring()) == [("1", "2", "3")]

    def test_islands_ordered_by_first_bus(self):
        """Components are ordered by their first bus in the case."""
        from gridcarbon.grid import Bus, islands
        from tests.cases import three_bus_ring

        case = three_bus_ring()
        case = dataclasses.replace(
            case, buses=(Bus("0", 138.0), *case.buses, Bus("9", 138.0))
        )
        assert islands(case) == [("0",), ("1", "2", "3"), ("9",)]

    def test_case_islands_need_one_slack_each(self):
        """A second island without a slack bus raises SingularIsland."""
        from gridcarbon.errors import SingularIsland
        from gridcarbon.grid import Bus, case_islands
        from tests.cases import three_bus_ring

        case = three_bus_ring()
        case = dataclasses.replace(case, buses=(*case.buses, Bus("9", 138.0)))
        with pytest.raises(SingularIsland):
            case_islands(case)

    def test_island_of_maps_every_bus(self):
        """Every bus maps to its island index."""
        from gridcarbon.grid import island_of
        from tests.cases import three_bus_ring

        assert island_of(three_bus_ring()) == {"1": 0, "2": 0, "3": 0}


class TestChargingSites:
    """Tests for charging-eligible buses."""

    def test_sites_below_threshold(self):
        """Buses strictly below the threshold voltage qualify."""
        from gridcarbon.grid import charging_sites
        from tests.cases import three_bus_ring

        case = three_bus_ring()
        assert charging_sites(case, case.county("C1")) == ("1", "2", "3")

    def test_threshold_is_strict(self):
        """A bus exactly at the threshold does not qualify."""
        from gridcarbon.errors import CountyHasNoEligibleBus
        from gridcarbon.grid import charging_sites
        from tests.cases import three_bus_ring

        case = three_bus_ring()
        with pytest.raises(CountyHasNoEligibleBus):
            charging_sites(case, case.county("C1"), threshold_kv=138.0)

    def test_no_site_allowed_without_fuel(self):
        """A county burning no fuel may have no eligible bus."""
        from gridcarbon.grid import County, charging_sites
        from tests.cases import three_bus_ring

        case = three_bus_ring()
        assert charging_sites(case, County("C9", "S", population=1.0)) == ()


class TestUpgradableLines:
    """Tests for upgrade eligibility."""

    def test_lines_above_threshold(self):
        """345 kV lines are upgradable."""
        from gridcarbon.grid import upgradable_lines
        from tests.cases import three_bus_ring

        assert upgradable_lines(three_bus_ring()) == ("L1", "L2", "L3")

    def test_threshold_is_strict(self):
        """Lines at exactly 200 kV are not upgradable."""
        from gridcarbon.grid import Line, is_upgradable

        line = Line("L", "1", "2", reactance_pu=0.1, capacity_mw=10.0, voltage_kv=200.0)
        assert not is_upgradable(line)
        assert is_upgradable(line, threshold_kv=199.0)
