"""Tests for the economic dispatch, EV re-dispatch and upgrade models."""

import dataclasses

import numpy as np
import pytest


def _base(case, loads=None):
    from gridcarbon.dispatch import solve_model_one

    loads = loads if loads is not None else np.zeros((len(case.buses), case.hours))
    return solve_model_one(case, loads), loads


class TestModelOne:
    """Tests for cost-minimizing base dispatch."""

    def test_congested_line(self):
        """A 30 MW line forces the expensive unit to cover 20 MW."""
        from gridcarbon.dispatch import solve_model_one
        from tests.cases import two_bus_cost_case

        case = two_bus_cost_case(capacity=30.0)
        dispatch = solve_model_one(case, {"2": [50.0]})

        assert dispatch.p_star[:, 0] == pytest.approx([30.0, 20.0], abs=1e-6)
        assert dispatch.cost_total == pytest.approx(1300.0)
        assert dispatch.flows[0, 0] == pytest.approx(30.0, abs=1e-6)

    def test_uncongested_line(self):
        """With 100 MW of transfer the cheap unit serves everything."""
        from gridcarbon.dispatch import solve_model_one
        from tests.cases import two_bus_cost_case

        dispatch = solve_model_one(two_bus_cost_case(capacity=100.0), {"2": [50.0]})

        assert dispatch.p_star[:, 0] == pytest.approx([50.0, 0.0], abs=1e-6)
        assert dispatch.cost_total == pytest.approx(500.0)
        assert dispatch.emissions_total_t == pytest.approx(50.0)

    def test_load_beyond_capacity(self):
        """Load above total capacity is infeasible."""
        from gridcarbon.dispatch import solve_model_one
        from gridcarbon.errors import InfeasibleBaseCase
        from tests.cases import two_bus_cost_case

        with pytest.raises(InfeasibleBaseCase) as excinfo:
            solve_model_one(two_bus_cost_case(capacity=1000.0), {"2": [250.0]})
        assert excinfo.value.solution is not None

    def test_availability_profile_bounds_output(self):
        """A wind unit never exceeds its hourly availability."""
        from tests.cases import two_bus_wind_case

        case = two_bus_wind_case(capacity=1000.0)
        dispatch, _ = _base(case, {"2": [30.0, 30.0]})
        assert dispatch.p_star[0, 0] == pytest.approx(30.0, abs=1e-6)
        assert dispatch.p_star[0, 1] == pytest.approx(0.0, abs=1e-6)
        assert dispatch.p_star[1, 1] == pytest.approx(30.0, abs=1e-6)

    def test_ramp_limits_are_cyclic(self):
        """Ramp rows link the last hour back to the first."""
        from gridcarbon.dispatch import solve_model_one
        from tests.cases import two_bus_wind_case

        case = two_bus_wind_case(capacity=1000.0)
        gas = dataclasses.replace(case.generators[1], ramp_up_mw_per_h=10.0, ramp_down_mw_per_h=10.0)
        case = dataclasses.replace(case, generators=(case.generators[0], gas))
        dispatch = solve_model_one(case, {"2": [30.0, 30.0]})
        gas_out = dispatch.p_star[1]
        assert abs(gas_out[1] - gas_out[0]) <= 10.0 + 1e-6
        # Wind covers hour 1 alone only if gas can ramp 30 MW; it cannot.
        assert gas_out[0] == pytest.approx(20.0, abs=1e-6)
        assert dispatch.p_star[0, 0] == pytest.approx(10.0, abs=1e-6)

    def test_loss_factor_flag(self):
        """A positive loss rate scales generation and flags the result."""
        from gridcarbon.contracts import FLAG_UNBALANCED_LOSSES
        from gridcarbon.dispatch import solve_model_one
        from tests.cases import two_bus_cost_case

        case = dataclasses.replace(two_bus_cost_case(capacity=100.0), loss_rate=0.2)
        dispatch = solve_model_one(case, {"2": [40.0]})
        assert dispatch.p_star.sum() == pytest.approx(50.0, abs=1e-6)
        assert FLAG_UNBALANCED_LOSSES in dispatch.flags

    def test_emission_rate(self):
        """The average rate is emissions per generated GWh."""
        from gridcarbon.dispatch import emission_rate, solve_model_one
        from tests.cases import two_bus_cost_case

        case = two_bus_cost_case(capacity=30.0)
        dispatch = solve_model_one(case, {"2": [50.0]})
        # 30 MWh at 1000 t/GWh and 20 MWh at 450 t/GWh.
        assert emission_rate(dispatch, case) == pytest.approx((30.0 + 9.0) / 50.0 * 1000.0)

    def test_wrong_load_shape(self):
        """Loads must cover every bus and hour."""
        from gridcarbon.dispatch import solve_model_one
        from gridcarbon.errors import InputError
        from tests.cases import two_bus_cost_case

        with pytest.raises(InputError):
            solve_model_one(two_bus_cost_case(), np.zeros((2, 5)))


class TestModelTwo:
    """Tests for emissions-minimizing EV re-dispatch."""

    def test_uncongested_charging_is_clean(self):
        """With a 30 MW line all charging energy comes from wind."""
        from gridcarbon.dispatch import solve_model_two
        from tests.cases import WIND_DEMAND, two_bus_wind_case

        case = two_bus_wind_case(capacity=30.0)
        base, loads = _base(case)
        ev = solve_model_two(case, loads, base, WIND_DEMAND)

        assert ev.e_ev_t == pytest.approx(0.0, abs=1e-6)
        assert ev.county_energy_residual <= 1e-6
        assert ev.station_ids == ("2",)
        assert ev.charging.sum() == pytest.approx(20.0)

    def test_congested_charging_burns_gas(self):
        """A 10 MW line forces half the energy onto the 500 t/GWh unit."""
        from gridcarbon.dispatch import ev_emissions, solve_model_two
        from tests.cases import WIND_DEMAND, two_bus_wind_case

        case = two_bus_wind_case(capacity=10.0)
        base, loads = _base(case)
        ev = solve_model_two(case, loads, base, WIND_DEMAND)

        assert ev.e_ev_t == pytest.approx(5.0, abs=1e-6)
        assert ev_emissions(case, base, ev) == pytest.approx(5.0, abs=1e-6)
        assert ev.max_primal_residual <= 1e-6
        assert np.abs(ev.flows).max() <= 10.0 + 1e-6

    def test_relaxed_network(self):
        """Without line limits the congested case is clean again."""
        from gridcarbon.dispatch import solve_model_two
        from tests.cases import WIND_DEMAND, two_bus_wind_case

        case = two_bus_wind_case(capacity=10.0)
        base, loads = _base(case)
        ev = solve_model_two(case, loads, base, WIND_DEMAND, relaxed=True)

        assert ev.relaxed
        assert ev.e_ev_t == pytest.approx(0.0, abs=1e-6)

    def test_demand_beyond_headroom(self):
        """300 MWh cannot be delivered by 240 MWh of availability."""
        from gridcarbon.dispatch import solve_model_two
        from gridcarbon.errors import InfeasibleEvDemand
        from tests.cases import two_bus_wind_case

        case = two_bus_wind_case(capacity=1000.0)
        base, loads = _base(case)
        with pytest.raises(InfeasibleEvDemand):
            solve_model_two(case, loads, base, {"C2": 300.0})

    def test_county_without_eligible_bus(self):
        """Demand in a county whose buses are all high voltage is refused."""
        from gridcarbon.dispatch import solve_model_two
        from gridcarbon.errors import CountyHasNoEligibleBus
        from tests.cases import WIND_DEMAND, two_bus_wind_case

        case = two_bus_wind_case(bus_kv=230.0)
        base, loads = _base(case)
        with pytest.raises(CountyHasNoEligibleBus):
            solve_model_two(case, loads, base, WIND_DEMAND)

    def test_unknown_county(self):
        """Demand for an undeclared county is a cross-reference error."""
        from gridcarbon.dispatch import solve_model_two
        from gridcarbon.errors import CrossReferenceError
        from tests.cases import two_bus_wind_case

        case = two_bus_wind_case()
        base, loads = _base(case)
        with pytest.raises(CrossReferenceError):
            solve_model_two(case, loads, base, {"C9": 1.0})

    def test_base_from_another_case(self):
        """A base dispatch of a different horizon is refused."""
        from gridcarbon.dispatch import solve_model_two
        from gridcarbon.errors import InputError
        from tests.cases import WIND_DEMAND, two_bus_cost_case, two_bus_wind_case

        other, _ = _base(two_bus_cost_case(capacity=100.0), {"2": [10.0]})
        case = two_bus_wind_case()
        with pytest.raises(InputError):
            solve_model_two(case, np.zeros((2, 2)), other, WIND_DEMAND)

    @pytest.mark.parametrize("rate", [0.0, 400.0, 1000.0])
    def test_reduction_follows_emission_rate(self, rate):
        """Reduction per county is 8.9 (1 - rate / 1000) tonnes per day."""
        from gridcarbon.dispatch import solve_model_two
        from gridcarbon.fleet import (
            FleetAssumptions,
            case_county_demands,
            ev_demand_map,
            tailpipe_tonnes,
        )
        from tests.cases import single_generator_case

        case = single_generator_case(rate)
        base, loads = _base(case, {"1": [10.0] * 24})
        demands = case_county_demands(case, FleetAssumptions(penetration=1.0))
        ev = solve_model_two(case, loads, base, ev_demand_map(demands))

        displaced = tailpipe_tonnes(case.counties[0].annual_gallons / 365.0)
        assert demands[0].e_c_daily_mwh == pytest.approx(8.9)
        assert displaced - ev.e_ev_t == pytest.approx(8.9 * (1.0 - rate * 1e-3), abs=1e-6)


class TestModelThree:
    """Tests for minimum MW-mile upgrades."""

    def _day(self, case):
        from gridcarbon.dispatch import UpgradeDay
        from tests.cases import WIND_DEMAND

        base, loads = _base(case)
        return UpgradeDay("d", loads, base, WIND_DEMAND)

    def test_zero_cap_needs_ten_mw(self):
        """A zero cap needs 10 MW more on the 1-mile line."""
        from gridcarbon.dispatch import solve_model_three
        from tests.cases import two_bus_wind_case

        case = two_bus_wind_case(capacity=10.0)
        plan = solve_model_three(case, [self._day(case)], 0.0)

        assert plan.delta_f[0] == pytest.approx(10.0, abs=1e-6)
        assert plan.objective_mw_mile == pytest.approx(10.0, abs=1e-6)
        assert plan.binding_lines == ("L12",)
        assert plan.achieved_e_ev_t[0] <= 1e-6

    def test_loose_cap_needs_nothing(self):
        """A 5 t cap is met by the existing network."""
        from gridcarbon.dispatch import solve_model_three
        from tests.cases import two_bus_wind_case

        case = two_bus_wind_case(capacity=10.0)
        plan = solve_model_three(case, [self._day(case)], 5.0)

        assert plan.objective_mw_mile == pytest.approx(0.0, abs=1e-6)
        assert plan.binding_lines == ()

    def test_zero_length_line_gets_minimal_increment(self):
        """A zero-length line is upgraded by exactly what the cap needs, at zero MW-miles."""
        from gridcarbon.dispatch import solve_model_three
        from tests.cases import two_bus_wind_case

        case = two_bus_wind_case(capacity=10.0)
        case = dataclasses.replace(case, lines=(dataclasses.replace(case.lines[0], length_mi=0.0),))

        tight = solve_model_three(case, [self._day(case)], 0.0)
        assert tight.delta_f[0] == pytest.approx(10.0, abs=1e-6)
        assert tight.objective_mw_mile == 0.0

        loose = solve_model_three(case, [self._day(case)], 5.0)
        assert loose.delta_f[0] == pytest.approx(0.0, abs=1e-9)

    def test_low_voltage_line_is_not_upgradable(self):
        """A 138 kV line gets no increment, so a zero cap is unreachable."""
        from gridcarbon.dispatch import solve_model_three
        from gridcarbon.errors import InfeasibleTarget
        from tests.cases import two_bus_wind_case

        case = two_bus_wind_case(capacity=10.0, line_kv=138.0)
        with pytest.raises(InfeasibleTarget):
            solve_model_three(case, [self._day(case)], 0.0)

    def test_upgraded_network_meets_cap(self):
        """Re-solving the re-dispatch on the upgraded line is clean."""
        from gridcarbon.dispatch import solve_model_three, solve_model_two
        from tests.cases import WIND_DEMAND, two_bus_wind_case

        case = two_bus_wind_case(capacity=10.0)
        plan = solve_model_three(case, [self._day(case)], 0.0)

        upgraded = two_bus_wind_case(capacity=10.0 + plan.delta_f[0])
        base, loads = _base(upgraded)
        ev = solve_model_two(upgraded, loads, base, WIND_DEMAND)
        assert ev.e_ev_t <= 1e-6

    def test_joint_days_share_increments(self):
        """Two identical days need the same single increment."""
        from gridcarbon.dispatch import UpgradeDay, plan_upgrades
        from tests.cases import two_bus_wind_case

        case = two_bus_wind_case(capacity=10.0)
        day = self._day(case)
        days = [day, UpgradeDay("e", day.hourly_loads, day.base, day.ev_demand)]
        plan = plan_upgrades(case, days, 0.0, mode="joint")

        assert plan.objective_mw_mile == pytest.approx(10.0, abs=1e-6)
        assert len(plan.achieved_e_ev_t) == 2

    def test_envelope_mode(self):
        """Per-day solves combine to the largest increment per line."""
        from gridcarbon.dispatch import plan_upgrades
        from tests.cases import two_bus_wind_case

        case = two_bus_wind_case(capacity=10.0)
        plan = plan_upgrades(case, [self._day(case)], 0.0, mode="envelope")
        assert plan.delta_f[0] == pytest.approx(10.0, abs=1e-6)

    def test_frontier(self):
        """Looser caps never need more upgrade."""
        from gridcarbon.dispatch import upgrade_frontier
        from tests.cases import two_bus_wind_case

        case = two_bus_wind_case(capacity=10.0)
        frontier = upgrade_frontier(case, [self._day(case)], [0.0, 2.5, 5.0])
        values = [plan.objective_mw_mile for _, plan in frontier]
        assert values == pytest.approx([10.0, 5.0, 0.0], abs=1e-6)

    def test_upgrade_share(self):
        """The share relates the upgrade to installed MW-mile."""
        from gridcarbon.dispatch import solve_model_three, upgrade_share
        from tests.cases import two_bus_wind_case

        case = two_bus_wind_case(capacity=10.0)
        plan = solve_model_three(case, [self._day(case)], 0.0)
        assert upgrade_share(case, plan) == pytest.approx(1.0, abs=1e-6)

    def test_no_days(self):
        """An upgrade study needs at least one day."""
        from gridcarbon.dispatch import solve_model_three
        from gridcarbon.errors import InputError
        from tests.cases import two_bus_wind_case

        with pytest.raises(InputError):
            solve_model_three(two_bus_wind_case(), [], 0.0)


class TestUpgradeEnvelope:
    """Tests for combining per-day plans."""

    def test_elementwise_maximum(self):
        """(10, 0) and (4, 7) combine to (10, 7)."""
        from gridcarbon.contracts import UpgradePlan
        from gridcarbon.dispatch import upgrade_envelope

        lengths = np.array([2.0, 3.0])
        plans = [
            UpgradePlan(("A", "B"), np.array([10.0, 0.0]), lengths, 20.0),
            UpgradePlan(("A", "B"), np.array([4.0, 7.0]), lengths, 29.0),
        ]
        combined = upgrade_envelope(plans)
        assert combined.delta_f.tolist() == [10.0, 7.0]
        assert combined.objective_mw_mile == pytest.approx(41.0)

    def test_mismatched_lines(self):
        """Plans over different lines cannot be combined."""
        from gridcarbon.contracts import UpgradePlan
        from gridcarbon.dispatch import upgrade_envelope
        from gridcarbon.errors import InputError

        plans = [
            UpgradePlan(("A",), np.array([1.0]), np.array([1.0]), 1.0),
            UpgradePlan(("B",), np.array([1.0]), np.array([1.0]), 1.0),
        ]
        with pytest.raises(InputError):
            upgrade_envelope(plans)


SYNTHETIC = [("mesh", 12, 0), ("mesh", 12, 6), ("two-area", 6, 1), ("two-area", 6, 3)]


def _synthetic_study(template, buses, seed, penetration=0.5):
    """Base dispatch at half load and county charging demand of a synthetic case."""
    from gridcarbon.fleet import FleetAssumptions, case_county_demands, ev_demand_map
    from gridcarbon.io import synth_case
    from gridcarbon.scenario import flat_curves, scale_bus_loads

    case = synth_case(template, buses, seed)
    base, loads = _base(case, scale_bus_loads(case, flat_curves(case, 0.5)))
    demand = ev_demand_map(case_county_demands(case, FleetAssumptions(penetration=penetration)))
    return case, loads, base, demand


class TestModelTwoProperties:
    """Invariants of the EV re-dispatch on synthetic cases."""

    @pytest.mark.parametrize(("template", "buses", "seed"), SYNTHETIC)
    def test_relaxed_never_emits_more(self, template, buses, seed):
        """Dropping line limits cannot raise charging emissions."""
        from gridcarbon.dispatch import solve_model_two

        case, loads, base, demand = _synthetic_study(template, buses, seed)
        constrained = solve_model_two(case, loads, base, demand)
        relaxed = solve_model_two(case, loads, base, demand, relaxed=True)
        assert relaxed.e_ev_t <= constrained.e_ev_t + 1e-6

    @pytest.mark.parametrize(("template", "buses", "seed"), SYNTHETIC)
    def test_emissions_grow_with_fuel(self, template, buses, seed):
        """More electrified fuel never lowers charging emissions."""
        from gridcarbon.dispatch import solve_model_two

        case, loads, base, demand = _synthetic_study(template, buses, seed, penetration=1.0)
        emissions = [
            solve_model_two(case, loads, base, {c: f * e for c, e in demand.items()}).e_ev_t
            for f in (0.1, 0.25, 0.5, 1.0)
        ]
        assert all(a <= b + 1e-6 for a, b in zip(emissions, emissions[1:]))

    @pytest.mark.parametrize(("template", "buses", "seed"), SYNTHETIC)
    @pytest.mark.parametrize("relaxed", [False, True])
    def test_objective_is_base_plus_charging(self, template, buses, seed, relaxed):
        """The objective minus base emissions equals the charging emissions."""
        from gridcarbon.dispatch import ev_emissions, solve_model_two

        case, loads, base, demand = _synthetic_study(template, buses, seed)
        ev = solve_model_two(case, loads, base, demand, relaxed=relaxed)
        assert ev.objective_t - base.emissions_total_t == pytest.approx(ev.e_ev_t, rel=1e-7, abs=1e-6)
        assert ev_emissions(case, base, ev) == pytest.approx(ev.e_ev_t, rel=1e-7, abs=1e-6)
        assert ev.county_energy_residual <= 1e-6

    @pytest.mark.parametrize("seed", [1, 3])
    def test_two_area_tie_binds(self, seed):
        """On the two-area case the tie keeps area-B charging off the curtailed renewables."""
        from gridcarbon.dispatch import solve_model_two
        from gridcarbon.scenario import congestion_induced

        case, loads, base, demand = _synthetic_study("two-area", 6, seed)
        ev = solve_model_two(case, loads, base, demand)
        tie = ev.line_ids.index("TIE")
        capacity = next(ln.capacity_mw for ln in case.lines if ln.id == "TIE")

        assert np.abs(ev.flows[tie]).max() == pytest.approx(capacity, rel=1e-6)
        assert congestion_induced(case, loads, demand, base=base) > 1e-3
