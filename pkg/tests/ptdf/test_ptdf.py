"""Tests for susceptance models and PTDF tables."""

import dataclasses

import numpy as np
import pytest

# Rows L1 (1-2), L2 (2-3), L3 (1-3); columns buses 1, 2, 3 with slack 3.
RING_PTDF = np.array(
    [
        [1 / 3, -1 / 3, 0.0],
        [1 / 3, 2 / 3, 0.0],
        [2 / 3, 1 / 3, 0.0],
    ]
)


class TestSusceptance:
    """Tests for the weighted Laplacian."""

    def test_laplacian_rows_sum_to_zero(self):
        """Every Laplacian row sums to zero."""
        from gridcarbon.ptdf import build_susceptance
        from tests.cases import three_bus_ring

        model = build_susceptance(three_bus_ring(), 0)
        laplacian = model.node_admittance.toarray()
        assert np.allclose(laplacian.sum(axis=1), 0.0)
        assert np.allclose(np.diag(laplacian), 2.0)

    def test_reduced_drops_slack(self):
        """The reduced matrix removes the slack row and column."""
        from gridcarbon.ptdf import build_susceptance
        from tests.cases import three_bus_ring

        model = build_susceptance(three_bus_ring(), 0)
        assert model.slack_bus == "3"
        assert model.reduced().shape == (2, 2)

    def test_slack_outside_island(self):
        """A slack bus outside the island is refused."""
        from gridcarbon.errors import UnknownBus
        from gridcarbon.grid import Island
        from gridcarbon.ptdf import build_susceptance
        from tests.cases import three_bus_ring

        island = Island(index=0, buses=("1", "2", "3"), slack_bus="9")
        with pytest.raises(UnknownBus):
            build_susceptance(three_bus_ring(), island)

    def test_disconnected_island_is_singular(self):
        """An island whose buses are not connected is refused."""
        from gridcarbon.errors import SingularIsland
        from gridcarbon.grid import Island
        from gridcarbon.ptdf import build_susceptance
        from tests.cases import three_bus_ring

        case = dataclasses.replace(three_bus_ring(), lines=three_bus_ring().lines[:1])
        island = Island(index=0, buses=("1", "2", "3"), slack_bus="3")
        with pytest.raises(SingularIsland):
            build_susceptance(case, island)


class TestComputePtdf:
    """Tests for PTDF values."""

    def test_three_bus_ring(self):
        """The unit-reactance triangle gives thirds."""
        from gridcarbon.ptdf import build_susceptance, compute_ptdf
        from tests.cases import three_bus_ring

        ptdf = compute_ptdf(build_susceptance(three_bus_ring(), 0))
        assert ptdf.line_ids == ("L1", "L2", "L3")
        assert ptdf.bus_ids == ("1", "2", "3")
        assert np.allclose(ptdf.values, RING_PTDF, atol=1e-9)

    def test_slack_column_is_zero(self):
        """Injecting at the slack bus moves no flow."""
        from gridcarbon.ptdf import build_susceptance, compute_ptdf
        from tests.cases import three_bus_ring

        ptdf = compute_ptdf(build_susceptance(three_bus_ring(), 0))
        assert not ptdf.column("3").any()

    def test_table_is_read_only(self):
        """PTDF values cannot be modified in place."""
        from gridcarbon.ptdf import build_susceptance, compute_ptdf
        from tests.cases import three_bus_ring

        ptdf = compute_ptdf(build_susceptance(three_bus_ring(), 0))
        with pytest.raises(ValueError):
            ptdf.values[0, 0] = 1.0

    def test_unknown_column(self):
        """Asking for a bus outside the island raises UnknownBus."""
        from gridcarbon.errors import UnknownBus
        from gridcarbon.ptdf import build_susceptance, compute_ptdf
        from tests.cases import three_bus_ring

        ptdf = compute_ptdf(build_susceptance(three_bus_ring(), 0))
        with pytest.raises(UnknownBus):
            ptdf.column("7")

    def test_radial_line_carries_full_transfer(self):
        """On a radial two-bus case every injection crosses the line."""
        from gridcarbon.ptdf import system_ptdf
        from tests.cases import two_bus_cost_case

        ptdf = system_ptdf(two_bus_cost_case())
        # Slack at bus 1: injecting at bus 2 pushes 1 MW from 2 to 1.
        assert np.allclose(ptdf.values, [[0.0, -1.0]])

    def test_weak_link_is_numerically_singular(self):
        """A line with a vanishing susceptance trips the pivot check."""
        from gridcarbon.errors import NumericallySingular
        from gridcarbon.ptdf import build_susceptance, compute_ptdf
        from tests.cases import three_bus_ring

        ring = three_bus_ring()
        weak = dataclasses.replace(ring.lines[0], reactance_pu=1e14)
        case = dataclasses.replace(ring, lines=(weak, ring.lines[1]))
        with pytest.raises(NumericallySingular, match="near-disconnection"):
            compute_ptdf(build_susceptance(case, 0))

    def test_negative_reactance_is_not_positive_definite(self):
        """A negative susceptance gives a negative pivot."""
        from gridcarbon.errors import NumericallySingular
        from gridcarbon.ptdf import build_susceptance, compute_ptdf
        from tests.cases import three_bus_ring

        ring = three_bus_ring()
        lines = tuple(dataclasses.replace(ln, reactance_pu=-1.0) for ln in ring.lines)
        case = dataclasses.replace(ring, lines=lines)
        with pytest.raises(NumericallySingular, match="positive definite"):
            compute_ptdf(build_susceptance(case, 0))

    def test_sparse_factor_matches_dense_inverse(self):
        """Factorized PTDF equals diag(b) A_r B_r^-1 built with a dense inverse."""
        from gridcarbon.io import synth_case
        from gridcarbon.ptdf import build_susceptance, compute_ptdf

        for seed in range(5):
            model = build_susceptance(synth_case("mesh", 25, seed), 0)
            keep = [i for i in range(len(model.bus_ids)) if i != model.slack_position]
            expected = model.branch_matrix()[:, keep].toarray() @ np.linalg.inv(
                model.reduced().toarray()
            )
            values = compute_ptdf(model).values
            assert np.allclose(values[:, keep], expected, atol=1e-9)
            assert not values[:, model.slack_position].any()

    def test_entity_columns(self):
        """Generators and loads take the column of their bus."""
        from gridcarbon.ptdf import build_susceptance, compute_ptdf, entity_columns
        from tests.cases import three_bus_ring

        case = three_bus_ring()
        ptdf = compute_ptdf(build_susceptance(case, 0))
        columns = entity_columns(ptdf, case, stations=("2",))
        assert np.allclose(columns.generators["G1"], RING_PTDF[:, 0])
        assert np.allclose(columns.loads["D3"], 0.0)
        assert np.allclose(columns.stations["2"], RING_PTDF[:, 1])


class TestSystemPtdf:
    """Tests for multi-island assembly."""

    def test_two_islands(self):
        """Cross-island entries are zero and each island has its own slack."""
        from gridcarbon.grid import Bus, Line
        from gridcarbon.ptdf import system_ptdf
        from tests.cases import three_bus_ring

        case = three_bus_ring()
        case = dataclasses.replace(
            case,
            buses=(*case.buses, Bus("4", 138.0), Bus("5", 138.0)),
            lines=(*case.lines, Line("L45", "4", "5", reactance_pu=0.2, capacity_mw=10.0)),
            slack_buses=("3", "4"),
        )
        ptdf = system_ptdf(case)
        assert ptdf.slack_buses == ("3", "4")
        assert ptdf.values.shape == (4, 5)
        assert np.allclose(ptdf.values[:3, :3], RING_PTDF)
        assert not ptdf.values[:3, 3:].any()
        assert not ptdf.values[3, :3].any()
        assert ptdf.values[3, 4] == pytest.approx(-1.0)

    def test_to_frame_labels(self):
        """The frame is labelled by line and bus ids."""
        from gridcarbon.ptdf import system_ptdf
        from tests.cases import three_bus_ring

        frame = system_ptdf(three_bus_ring()).to_frame()
        assert list(frame.index) == ["L1", "L2", "L3"]
        assert list(frame.columns) == ["1", "2", "3"]


class TestDirectFlows:
    """Tests for the direct DC power flow."""

    def test_matches_ring_values(self):
        """Direct flows on the triangle match the PTDF product."""
        from gridcarbon.ptdf import dc_flows_direct
        from tests.cases import three_bus_ring

        flows = dc_flows_direct(three_bus_ring(), {"1": 30.0, "3": -30.0})
        assert np.allclose(flows, [10.0, 10.0, 20.0])

    def test_imbalanced_injection(self):
        """Injections that do not sum to zero are refused."""
        from gridcarbon.errors import ImbalancedInjection
        from gridcarbon.ptdf import dc_flows_direct
        from tests.cases import three_bus_ring

        with pytest.raises(ImbalancedInjection):
            dc_flows_direct(three_bus_ring(), {"1": 30.0, "3": -20.0})

    @pytest.mark.slow
    def test_ptdf_matches_direct_solution_on_random_meshes(self):
        """PTDF flows equal direct DC flows on 200 random meshes."""
        from gridcarbon.io import synth_case
        from gridcarbon.ptdf import dc_flows_direct, system_ptdf

        rng = np.random.default_rng(2024)
        for seed in range(200):
            case = synth_case("mesh", int(rng.integers(2, 31)), seed)
            injections = rng.uniform(-50.0, 50.0, size=len(case.buses))
            slack = case.bus_index[case.slack_buses[0]]
            injections[slack] -= injections.sum()

            via_ptdf = system_ptdf(case).values @ injections
            direct = dc_flows_direct(case, injections)
            assert np.allclose(via_ptdf, direct, atol=1e-6 * max(1.0, np.abs(direct).max())), case.name


CASES = [("mesh", 12, 0), ("mesh", 20, 4), ("mesh", 30, 9), ("two-area", 6, 1), ("two-area", 10, 3)]


class TestPtdfProperties:
    """Structural identities of PTDF tables on synthetic cases."""

    def _balanced(self, case, rng):
        injections = rng.uniform(-50.0, 50.0, size=len(case.buses))
        return injections - injections.mean()

    @pytest.mark.parametrize(("template", "buses", "seed"), CASES)
    def test_flows_do_not_depend_on_slack(self, template, buses, seed):
        """Moving the slack changes columns but not flows of balanced injections."""
        from gridcarbon.io import synth_case
        from gridcarbon.ptdf import system_ptdf

        case = synth_case(template, buses, seed)
        rng = np.random.default_rng(seed)
        reference = system_ptdf(case)
        for slack in rng.choice([b.id for b in case.buses], size=3, replace=False):
            moved = system_ptdf(dataclasses.replace(case, slack_buses=(str(slack),)))
            assert moved.slack_buses == (str(slack),)
            for _ in range(3):
                p = self._balanced(case, rng)
                assert np.allclose(moved.values @ p, reference.values @ p, atol=1e-8)
            # Columns shift by the flow of a transfer to the old slack.
            old = case.bus_index[case.slack_buses[0]]
            assert np.allclose(
                moved.values - moved.values[:, [old]], reference.values, atol=1e-9
            )

    @pytest.mark.parametrize(("template", "buses", "seed"), CASES)
    def test_superposition(self, template, buses, seed):
        """Flows of summed injections and chained transfers add up."""
        from gridcarbon.io import synth_case
        from gridcarbon.ptdf import dc_flows_direct, system_ptdf

        case = synth_case(template, buses, seed)
        rng = np.random.default_rng(100 + seed)
        ptdf = system_ptdf(case).values

        p1, p2 = self._balanced(case, rng), self._balanced(case, rng)
        combined = dc_flows_direct(case, 2.0 * p1 - 0.5 * p2)
        assert np.allclose(ptdf @ (2.0 * p1 - 0.5 * p2), combined, atol=1e-8)
        assert np.allclose(
            combined,
            2.0 * dc_flows_direct(case, p1) - 0.5 * dc_flows_direct(case, p2),
            atol=1e-8,
        )

        i, j, k = rng.choice(len(case.buses), size=3, replace=False)
        def transfer(a, b):
            return ptdf[:, a] - ptdf[:, b]

        assert np.allclose(transfer(i, k), transfer(i, j) + transfer(j, k), atol=1e-12)

    @pytest.mark.parametrize(("template", "buses", "seed"), CASES)
    def test_line_transfers_are_reciprocal(self, template, buses, seed):
        """Flow on m per unit transfer across l, over b_m, is symmetric in l and m."""
        from gridcarbon.io import synth_case
        from gridcarbon.ptdf import system_ptdf

        case = synth_case(template, buses, seed)
        ptdf = system_ptdf(case).values
        ends_from = [case.bus_index[ln.from_bus] for ln in case.lines]
        ends_to = [case.bus_index[ln.to_bus] for ln in case.lines]
        b = np.array([ln.susceptance for ln in case.lines])

        # crossing[m, l]: flow on m when 1 MW moves from l's from-bus to its to-bus.
        crossing = ptdf[:, ends_from] - ptdf[:, ends_to]
        weighted = crossing / b[:, None]
        assert np.allclose(weighted, weighted.T, atol=1e-9)
        # A line always carries less than the whole transfer across itself.
        assert np.all(np.diag(crossing) <= 1.0 + 1e-9)
        assert np.all(np.diag(crossing) >= -1e-9)
