"""Tests for report emission."""

import json
import tempfile
from pathlib import Path

import numpy as np
import pandas as pd
import pytest


def _upgrade_results():
    from gridcarbon.dispatch import UpgradeDay, solve_model_one, solve_model_three, solve_model_two
    from gridcarbon.io import RunResults
    from tests.cases import WIND_DEMAND, two_bus_wind_case

    case = two_bus_wind_case(capacity=10.0)
    loads = np.zeros((2, case.hours))
    base = solve_model_one(case, loads)
    ev = solve_model_two(case, loads, base, WIND_DEMAND)
    plan = solve_model_three(case, [UpgradeDay("d", loads, base, WIND_DEMAND)], 0.0)
    return RunResults(
        command="upgrade",
        case=case,
        base=base,
        ev=ev,
        plan=plan,
        summary={"e_ev_t": ev.e_ev_t, "objective_mw_mile": plan.objective_mw_mile},
        config={"loss_rate": 0.0},
    )


class TestEmitReport:
    """Tests for the written report files."""

    def test_files(self):
        """A full run writes every table plus manifest and summaries."""
        from gridcarbon.io import emit_report

        with tempfile.TemporaryDirectory() as tmpdir:
            written = emit_report(_upgrade_results(), tmpdir)
            names = [p.name for p in written]

        assert names == [
            "charging.csv",
            "county_energy.csv",
            "flows.csv",
            "generation.csv",
            "generation_by_fuel.csv",
            "manifest.json",
            "summary.json",
            "summary.md",
            "upgrade.csv",
        ]

    def test_upgrade_table(self):
        """The upgrade table has one nonzero increment on L12."""
        from gridcarbon.io import emit_report

        with tempfile.TemporaryDirectory() as tmpdir:
            emit_report(_upgrade_results(), tmpdir)
            table = pd.read_csv(Path(tmpdir) / "upgrade.csv")
            summary = (Path(tmpdir) / "summary.md").read_text()

        assert list(table.columns) == ["line_id", "delta_f_mw", "length_mi", "mw_mile"]
        nonzero = table[table["delta_f_mw"] > 1e-9]
        assert nonzero["line_id"].tolist() == ["L12"]
        assert nonzero["mw_mile"].iloc[0] == pytest.approx(10.0, abs=1e-6)
        assert "## Line upgrades" in summary

    def test_manifest(self):
        """The manifest echoes the run and lists the files."""
        from gridcarbon import __version__
        from gridcarbon.io import emit_report

        with tempfile.TemporaryDirectory() as tmpdir:
            written = emit_report(_upgrade_results(), tmpdir)
            manifest = json.loads((Path(tmpdir) / "manifest.json").read_text())

        assert manifest["version"] == __version__
        assert manifest["command"] == "upgrade"
        assert manifest["config"] == {"loss_rate": 0.0}
        assert manifest["slack_buses"] == ["1"]
        assert manifest["files"] == sorted(p.name for p in written)
        assert set(manifest["libraries"]) == {"networkx", "numpy", "pandas", "scipy"}

    def test_deterministic(self):
        """The same results give the same bytes."""
        from gridcarbon.io import emit_report

        results = _upgrade_results()
        with tempfile.TemporaryDirectory() as first, tempfile.TemporaryDirectory() as second:
            emit_report(results, first)
            emit_report(results, second)
            for path in sorted(Path(first).iterdir()):
                assert path.read_bytes() == (Path(second) / path.name).read_bytes(), path.name

    def test_json_format(self):
        """JSON tables are record lists."""
        from gridcarbon.io import emit_report

        with tempfile.TemporaryDirectory() as tmpdir:
            emit_report(_upgrade_results(), tmpdir, fmt="json")
            records = json.loads((Path(tmpdir) / "charging.json").read_text())

        assert records[0]["bus_id"] == "2"
        assert records[0]["county_fips"] == "C2"
        assert sum(r["charging_mw"] for r in records) == pytest.approx(20.0)

    def test_generation_by_fuel(self):
        """Fuel totals add up the generator table."""
        from gridcarbon.io import emit_report

        with tempfile.TemporaryDirectory() as tmpdir:
            emit_report(_upgrade_results(), tmpdir)
            generation = pd.read_csv(Path(tmpdir) / "generation.csv")
            by_fuel = pd.read_csv(Path(tmpdir) / "generation_by_fuel.csv")

        assert by_fuel["total_mw"].sum() == pytest.approx(generation["total_mw"].sum())
        assert by_fuel["fuel"].tolist() == ["gas", "wind", "gas", "wind"]

    def test_ptdf_dump(self):
        """The PTDF table has lines as rows and buses as columns."""
        from gridcarbon.io import RunResults, emit_report
        from gridcarbon.ptdf import system_ptdf
        from tests.cases import three_bus_ring

        with tempfile.TemporaryDirectory() as tmpdir:
            emit_report(RunResults(command="ptdf", ptdf=system_ptdf(three_bus_ring())), tmpdir)
            table = pd.read_csv(Path(tmpdir) / "ptdf.csv", index_col="line_id")

        assert table.index.tolist() == ["L1", "L2", "L3"]
        assert table.loc["L3", "3"] == pytest.approx(0.0)
        assert table.loc["L3", "1"] == pytest.approx(2.0 / 3.0)


class TestReportErrors:
    """Tests for refused reports."""

    def test_unknown_format(self):
        """Only csv and json are supported."""
        from gridcarbon.errors import ReportError
        from gridcarbon.io import emit_report

        with tempfile.TemporaryDirectory() as tmpdir:
            with pytest.raises(ReportError, match="format"):
                emit_report(_upgrade_results(), tmpdir, fmt="xlsx")

    def test_empty_sweep(self):
        """A sweep with no rows is an error."""
        from gridcarbon.errors import ReportError
        from gridcarbon.io import RunResults, emit_report

        with tempfile.TemporaryDirectory() as tmpdir:
            with pytest.raises(ReportError, match="no rows"):
                emit_report(RunResults(command="sweep", sweep=[]), tmpdir)

    def test_empty_results(self):
        """Results with nothing in them are refused."""
        from gridcarbon.errors import ReportError
        from gridcarbon.io import RunResults, emit_report

        with tempfile.TemporaryDirectory() as tmpdir:
            with pytest.raises(ReportError):
                emit_report(RunResults(command="dispatch"), tmpdir)
            assert list(Path(tmpdir).iterdir()) == []
