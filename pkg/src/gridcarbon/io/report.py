"""Report emission: result tables, run manifest and a Markdown summary.

Every run writes into one output directory:

    manifest.json          version, command, config echo, flags, files
    summary.json           headline quantities of the run
    summary.md             human-readable summary
    generation.<fmt>       per-generator base and re-dispatch output by hour
    generation_by_fuel.<fmt>
    flows.<fmt>            line flows by hour
    charging.<fmt>         station charging by hour
    county_energy.<fmt>    delivered charging energy per county
    upgrade.<fmt>          line capacity increments
    sweep.<fmt>            scenario sweep rows
    ptdf.csv               system PTDF table

Tables are only written when the run produced them. Files are written
atomically and their bytes depend only on the inputs.
"""

from __future__ import annotations

import json
import logging
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import networkx as nx
import numpy as np
import pandas as pd
import scipy
from jinja2 import Template

from .. import __version__
from ..contracts import BaseDispatch, EvDispatch, RunManifest, SweepRow, UpgradePlan
from ..errors import ReportError
from ..grid.model import Fuel, GridCase
from ..ptdf import SystemPtdf
from .bundle import write_atomic

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")

SUMMARY_TEMPLATE = Template('''# gridcarbon {{ manifest.command }}

Case: {{ case_name }}

{% if summary %}
| quantity | value |
|---|---|
{% for key, value in summary %}
| {{ key }} | {{ value }} |
{% endfor %}
{% endif %}
{% if binding %}

## Line upgrades

| line | delta_f_mw | length_mi | mw_mile |
|---|---|---|---|
{% for row in binding %}
| {{ row.line_id }} | {{ row.delta_f_mw }} | {{ row.length_mi }} | {{ row.mw_mile }} |
{% endfor %}
{% endif %}
{% if sweep %}

## Sweep

| penetration | renewable_level | mode | e_ev_t | e_v_t | congestion_induced_t | status |
|---|---|---|---|---|---|---|
{% for row in sweep %}
| {{ row.penetration }} | {{ row.renewable_level }} | {{ row.mode }} | {{ row.e_ev_t }} | {{ row.e_v_t }} | {{ row.congestion_induced_t }} | {{ row.status }} |
{% endfor %}
{% endif %}
{% if manifest.flags %}

## Formulation flags

{% for flag in manifest.flags | sort %}
- {{ flag }}
{% endfor %}
{% endif %}
''', trim_blocks=True, lstrip_blocks=True)


@dataclass
class RunResults:
    """Everything one run may report.

    Attributes:
        command: CLI command or entry point that produced the results.
        case: The study system (needed for fuel groupings).
        base: Model I dispatch.
        ev: Model II re-dispatch.
        plan: Model III upgrade plan.
        sweep: Scenario sweep rows; an empty sequence is an error.
        ptdf: System PTDF table to dump.
        summary: Headline scalars (emissions, costs, shares).
        config: Effective configuration to echo.
        flags: Extra deviation flags.
    """

    command: str
    case: GridCase | None = None
    base: BaseDispatch | None = None
    ev: EvDispatch | None = None
    plan: UpgradePlan | None = None
    sweep: Sequence[SweepRow] | None = None
    ptdf: SystemPtdf | None = None
    summary: dict[str, Any] = field(default_factory=dict)
    config: Mapping[str, Any] = field(default_factory=dict)
    flags: tuple[str, ...] = ()

    @property
    def empty(self) -> bool:
        return (
            self.base is None
            and self.ev is None
            and self.plan is None
            and not self.sweep
            and self.ptdf is None
            and not self.summary
        )

    def all_flags(self) -> list[str]:
        found = set(self.flags)
        for part in (self.base, self.ev, self.plan):
            if part is not None:
                found.update(part.flags)
        return sorted(found)

    def slack_buses(self) -> list[str]:
        if self.base is not None:
            return list(self.base.slack_buses)
        if self.ptdf is not None:
            return list(self.ptdf.slack_buses)
        if self.case is not None:
            return list(self.case.slack_buses)
        return []


def library_versions() -> dict[str, str]:
    return {
        "networkx": nx.__version__,
        "numpy": np.__version__,
        "pandas": pd.__version__,
        "scipy": scipy.__version__,
    }


def _hourly(
    ids: Sequence[str], values: np.ndarray, id_column: str, value_column: str
) -> pd.DataFrame:
    hours = values.shape[1] if values.ndim == 2 else 0
    return pd.DataFrame(
        {
            id_column: np.repeat(list(ids), hours),
            "hour": np.tile(np.arange(1, hours + 1), len(ids)),
            value_column: values.reshape(-1),
        }
    )


def generation_table(
    case: GridCase | None, base: BaseDispatch | None, ev: EvDispatch | None
) -> pd.DataFrame | None:
    """Per-generator hourly output, base plus re-dispatch increments."""
    if base is None and ev is None:
        return None
    ids = base.generator_ids if base is not None else ev.generator_ids  # type: ignore[union-attr]
    if base is not None:
        frame = _hourly(ids, base.p_star, "gen_id", "base_mw")
    else:
        frame = _hourly(ids, np.zeros_like(ev.delta_p), "gen_id", "base_mw")  # type: ignore[union-attr]
    frame["redispatch_mw"] = ev.delta_p.reshape(-1) if ev is not None else 0.0
    frame["total_mw"] = frame["base_mw"] + frame["redispatch_mw"]
    if case is not None:
        fuels = {g.id: g.fuel.value for g in case.generators}
        frame.insert(1, "fuel", frame["gen_id"].map(fuels))
    return frame


def generation_by_fuel(generation: pd.DataFrame) -> pd.DataFrame:
    """Hourly generation summed per fuel, fuels in declaration order."""
    order = {fuel.value: i for i, fuel in enumerate(Fuel)}
    grouped = (
        generation.groupby(["hour", "fuel"], sort=False)[["base_mw", "redispatch_mw", "total_mw"]]
        .sum()
        .reset_index()
    )
    grouped["_order"] = grouped["fuel"].map(order)
    grouped = grouped.sort_values(["hour", "_order"], kind="stable")
    return grouped.drop(columns="_order").reset_index(drop=True)


def flow_table(case: GridCase | None, flows: np.ndarray, line_ids: Sequence[str]) -> pd.DataFrame:
    frame = _hourly(line_ids, flows, "line_id", "flow_mw")
    if case is not None:
        capacity = {ln.id: ln.capacity_mw for ln in case.lines}
        frame["capacity_mw"] = frame["line_id"].map(capacity)
    return frame


def charging_table(ev: EvDispatch) -> pd.DataFrame:
    frame = _hourly(ev.station_ids, ev.charging, "bus_id", "charging_mw")
    counties = dict(zip(ev.station_ids, ev.station_counties, strict=True))
    frame.insert(1, "county_fips", frame["bus_id"].map(counties))
    return frame


def upgrade_table(plan: UpgradePlan) -> pd.DataFrame:
    """One row per line of the plan with its increment and MW-mile cost."""
    return pd.DataFrame(
        {
            "line_id": list(plan.line_ids),
            "delta_f_mw": plan.delta_f,
            "length_mi": plan.lengths_mi,
            "mw_mile": plan.delta_f * plan.lengths_mi,
        }
    )


def sweep_table(rows: Sequence[SweepRow]) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "penetration": r.penetration,
                "renewable_level": r.renewable_level,
                "mode": r.mode,
                "e_ev_t": r.e_ev_t,
                "e_icv_t": r.e_icv_t,
                "e_v_t": r.e_v_t,
                "congestion_induced_t": r.congestion_induced_t,
                "scale_factor": r.scale_factor,
                "status": r.status,
            }
            for r in rows
        ]
    )


def _render(frame: pd.DataFrame, fmt: str) -> str:
    if fmt == "csv":
        return frame.to_csv(index=False, lineterminator="\n")
    return frame.to_json(orient="records", indent=2, double_precision=15) + "\n"


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, np.generic):
        return _json_value(value.item())
    if isinstance(value, Mapping):
        return {str(k): _json_value(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_json_value(v) for v in value]
    return value


def dump_ptdf(ptdf: SystemPtdf, path: Path | str) -> Path:
    """Write a system PTDF table as CSV (lines as rows, buses as columns)."""
    path = Path(path)
    frame = ptdf.to_frame()
    frame.index.name = "line_id"
    write_atomic(path, frame.to_csv(lineterminator="\n"))
    return path


def emit_report(results: RunResults, out_dir: Path | str, fmt: str = "csv") -> list[Path]:
    """Write every table of ``results`` plus manifest and summaries.

    Args:
        results: The run's outcomes.
        out_dir: Output directory (created if needed).
        fmt: Table format, "csv" or "json".

    Returns:
        Written paths, sorted by name.

    Raises:
        ReportError: For empty results, an empty sweep, an unknown format,
            or a write failure.
    """
    if fmt not in FORMATS:
        raise ReportError(f"unknown report format {fmt!r}, expected one of {FORMATS}")
    if results.sweep is not None and not results.sweep:
        raise ReportError("sweep produced no rows")
    if results.empty:
        raise ReportError("nothing to report")

    out = Path(out_dir)
    tables: dict[str, pd.DataFrame] = {}
    generation = generation_table(results.case, results.base, results.ev)
    if generation is not None:
        tables["generation"] = generation
        if "fuel" in generation.columns:
            tables["generation_by_fuel"] = generation_by_fuel(generation)
    if results.ev is not None:
        tables["flows"] = flow_table(results.case, results.ev.flows, results.ev.line_ids)
        tables["charging"] = charging_table(results.ev)
        tables["county_energy"] = pd.DataFrame(
            {
                "fips": list(results.ev.county_energy),
                "delivered_mwh": list(results.ev.county_energy.values()),
            }
        )
    elif results.base is not None:
        tables["flows"] = flow_table(results.case, results.base.flows, results.base.line_ids)
    if results.plan is not None:
        tables["upgrade"] = upgrade_table(results.plan)
    if results.sweep:
        tables["sweep"] = sweep_table(results.sweep)

    texts: dict[str, str] = {f"{name}.{fmt}": _render(frame, fmt) for name, frame in tables.items()}
    if results.summary:
        texts["summary.json"] = (
            json.dumps(_json_value(results.summary), indent=2, sort_keys=True) + "\n"
        )

    manifest = RunManifest(
        version=__version__,
        command=results.command,
        config=_json_value(dict(results.config)),
        flags=results.all_flags(),
        slack_buses=results.slack_buses(),
        libraries=library_versions(),
    )
    binding = []
    if results.plan is not None:
        upgrades = tables["upgrade"]
        binding = upgrades[upgrades["delta_f_mw"] > 1e-9].to_dict(orient="records")
    texts["summary.md"] = SUMMARY_TEMPLATE.render(
        manifest=manifest.to_dict(),
        case_name=results.case.name if results.case is not None else "-",
        summary=sorted(_json_value(results.summary).items()),
        binding=binding,
        sweep=[vars(r) for r in results.sweep or ()],
    )
    names = sorted([*texts, "manifest.json", *(["ptdf.csv"] if results.ptdf is not None else [])])
    manifest.files = names
    texts["manifest.json"] = manifest.to_json()

    written: list[Path] = []
    try:
        for name in sorted(texts):
            path = out / name
            write_atomic(path, texts[name])
            written.append(path)
        if results.ptdf is not None:
            written.append(dump_ptdf(results.ptdf, out / "ptdf.csv"))
    except OSError as e:
        raise ReportError(f"cannot write report to {out}: {e}") from e
    logger.info("wrote %d report files to %s", len(written), out)
    return sorted(written)
