"""Case bundles: a directory of CSV tables plus an optional config.yaml.

Tables (UTF-8, '.' decimal, fixed headers):

    buses.csv            bus_id,name,voltage_kv,county_fips,region
    lines.csv            line_id,from_bus,to_bus,reactance_pu,capacity_mw,length_mi,voltage_kv
    generators.csv       gen_id,bus_id,fuel,capacity_mw,cost_per_mwh,emission_t_per_gwh,
                         ramp_up_mw_per_h,ramp_down_mw_per_h
    gen_profiles.csv     gen_id,hour,per_unit
    loads.csv            load_id,bus_id,peak_mw,region
    regional_curves.csv  region,month,hour,per_unit
    counties.csv         fips,state,population[,penetration]
    state_fuel.csv       state,annual_gallons

Only buses, lines and generators are required. Line numbers in errors
count the header as line 1.
"""

from __future__ import annotations

import logging
import math
import os
import tempfile
from collections.abc import Mapping
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
import yaml

from ..errors import CrossReferenceError, InputError, ParseError, ValidationError
from ..fleet import allocate_fuel
from ..grid.model import (
    HOURS_PER_DAY,
    Bus,
    County,
    Fuel,
    GenerationUnit,
    GridCase,
    Line,
    LoadPoint,
    TimeGrid,
)
from ..grid.topology import islands
from ..grid.validation import validate_case
from .config import RunConfig, load_config

logger = logging.getLogger(__name__)

SCHEMAS: dict[str, tuple[str, ...]] = {
    "buses.csv": ("bus_id", "name", "voltage_kv", "county_fips", "region"),
    "lines.csv": (
        "line_id",
        "from_bus",
        "to_bus",
        "reactance_pu",
        "capacity_mw",
        "length_mi",
        "voltage_kv",
    ),
    "generators.csv": (
        "gen_id",
        "bus_id",
        "fuel",
        "capacity_mw",
        "cost_per_mwh",
        "emission_t_per_gwh",
        "ramp_up_mw_per_h",
        "ramp_down_mw_per_h",
    ),
    "gen_profiles.csv": ("gen_id", "hour", "per_unit"),
    "loads.csv": ("load_id", "bus_id", "peak_mw", "region"),
    "regional_curves.csv": ("region", "month", "hour", "per_unit"),
    "counties.csv": ("fips", "state", "population"),
    "state_fuel.csv": ("state", "annual_gallons"),
}

REQUIRED = ("buses.csv", "lines.csv", "generators.csv")
CONFIG_FILE = "config.yaml"

# Entity kind of validation issues -> (file, id column).
_ENTITY_FILES = {
    "bus": ("buses.csv", "bus_id"),
    "line": ("lines.csv", "line_id"),
    "generator": ("generators.csv", "gen_id"),
    "load": ("loads.csv", "load_id"),
    "county": ("counties.csv", "fips"),
}


@dataclass(frozen=True)
class CaseBundle:
    """Location of a case bundle on disk.

    Attributes:
        root: Directory holding the tables.
    """

    root: Path

    @classmethod
    def at(cls, path: Path | str) -> CaseBundle:
        """Open a bundle directory.

        Raises:
            InputError: If the directory or a required table is missing.
        """
        root = Path(path)
        if not root.is_dir():
            raise InputError(f"bundle directory not found: {root}")
        for name in REQUIRED:
            if not (root / name).is_file():
                raise InputError(f"bundle {root} lacks {name}")
        return cls(root)

    def path(self, name: str) -> Path:
        return self.root / name

    def has(self, name: str) -> bool:
        return self.path(name).is_file()

    @property
    def config_path(self) -> Path | None:
        path = self.path(CONFIG_FILE)
        return path if path.is_file() else None


class _Table:
    """A parsed CSV table with parse-error context.

    Blank lines are read as empty rows and dropped afterwards, so a row's
    frame index plus two is still its line in the file.
    """

    def __init__(self, bundle: CaseBundle, name: str):
        self.name = name
        path = bundle.path(name)
        try:
            frame = pd.read_csv(
                path,
                dtype=str,
                keep_default_na=False,
                skipinitialspace=True,
                skip_blank_lines=False,
            )
        except (OSError, pd.errors.ParserError, UnicodeDecodeError) as e:
            raise ParseError(str(e), file=name) from e
        frame.columns = [c.strip() for c in frame.columns]
        frame = frame.fillna("")
        if len(frame):
            blank = frame.map(lambda v: str(v).strip() == "").all(axis=1)
            frame = frame[~blank.to_numpy(dtype=bool)]
        self.frame = frame
        for column in SCHEMAS[name]:
            if column not in self.frame.columns:
                raise ParseError("missing column", file=name, line=1, column=column)

    def rows(self) -> list[tuple[int, dict[str, str]]]:
        """(file line, row) pairs."""
        records = self.frame.to_dict(orient="records")
        return [
            (int(index) + 2, {k: str(v).strip() for k, v in r.items()})
            for index, r in zip(self.frame.index, records, strict=True)
        ]

    def number(
        self, row: dict[str, str], line: int, column: str, default: float | None = None
    ) -> float:
        raw = row.get(column, "")
        if raw == "" and default is not None:
            return default
        try:
            return float(raw)
        except ValueError:
            raise ParseError(f"not a number: {raw!r}", file=self.name, line=line, column=column) from None

    def integer(self, row: dict[str, str], line: int, column: str) -> int:
        value = self.number(row, line, column)
        if not value.is_integer():
            raise ParseError(f"not an integer: {row[column]!r}", file=self.name, line=line, column=column)
        return int(value)

    def text(self, row: dict[str, str], line: int, column: str) -> str:
        value = row.get(column, "")
        if value == "":
            raise ParseError("empty value", file=self.name, line=line, column=column)
        return value


def _read(bundle: CaseBundle, name: str) -> _Table | None:
    return _Table(bundle, name) if bundle.has(name) else None


def _check_refs(
    table: _Table,
    column: str,
    known: set[str] | Mapping[str, Any],
    target: str,
    id_column: str,
    kind: str,
) -> None:
    for line, row in table.rows():
        ref = row[column]
        if ref not in known:
            raise CrossReferenceError(
                f"{table.name}:{line}: {kind} {row[id_column]} references {column} "
                f"{ref!r} absent from {target}"
            )


def load_profiles(bundle: CaseBundle) -> tuple[dict[str, tuple[float, ...]], int | None]:
    """Hourly per-unit availability per generator and the profile horizon."""
    table = _read(bundle, "gen_profiles.csv")
    if table is None:
        return {}, None
    series: dict[str, dict[int, float]] = {}
    for line, row in table.rows():
        gen_id = table.text(row, line, "gen_id")
        hour = table.integer(row, line, "hour")
        if hour in series.setdefault(gen_id, {}):
            raise ParseError(f"duplicate hour {hour} for {gen_id}", file=table.name, line=line)
        series[gen_id][hour] = table.number(row, line, "per_unit")
    horizon = max((max(hours) for hours in series.values() if hours), default=None)
    profiles = {
        gen_id: tuple(values.get(h, math.nan) for h in range(1, max(values) + 1))
        for gen_id, values in series.items()
    }
    return profiles, horizon


def load_curves(bundle: CaseBundle) -> dict[str, dict[int, np.ndarray]]:
    """Region -> month -> per-unit hourly curve from regional_curves.csv.

    Raises:
        ParseError: On malformed rows, months outside 1..12 or gaps in hours.
    """
    table = _read(bundle, "regional_curves.csv")
    if table is None:
        return {}
    points: dict[str, dict[int, dict[int, float]]] = {}
    for line, row in table.rows():
        region = row["region"]
        month = table.integer(row, line, "month")
        if not 1 <= month <= 12:
            raise ParseError(f"month {month} outside 1..12", file=table.name, line=line, column="month")
        hour = table.integer(row, line, "hour")
        points.setdefault(region, {}).setdefault(month, {})[hour] = table.number(
            row, line, "per_unit"
        )
    curves: dict[str, dict[int, np.ndarray]] = {}
    for region, months in points.items():
        curves[region] = {}
        for month, hours in sorted(months.items()):
            if sorted(hours) != list(range(1, len(hours) + 1)):
                raise ParseError(
                    f"region {region!r} month {month} has hours {sorted(hours)}; expected 1..n",
                    file=table.name,
                )
            curves[region][month] = np.array([hours[h] for h in sorted(hours)], dtype=float)
    return curves


def default_slack_buses(case: GridCase) -> tuple[str, ...]:
    """First bus (case order) of every island."""
    return tuple(component[0] for component in islands(case))


def _locate(bundle: CaseBundle) -> dict[tuple[str, str], str]:
    locations: dict[tuple[str, str], str] = {}
    for entity, (name, column) in _ENTITY_FILES.items():
        table = _read(bundle, name)
        if table is None:
            continue
        for line, row in table.rows():
            locations.setdefault((entity, row.get(column, "")), f"{name}:{line}")
    return locations


def load_case(
    bundle: CaseBundle | Path | str,
    config: RunConfig | None = None,
    *,
    validate: bool = True,
) -> GridCase:
    """Read, cross-check and validate a case bundle.

    Args:
        bundle: Bundle or its directory.
        config: Run configuration; defaults to the bundle's config.yaml
            merged with the environment.
        validate: Run the validation rules and raise on errors.

    Returns:
        The GridCase. County fuel is allocated from state_fuel.csv by
        population.

    Raises:
        ParseError: If a table cannot be parsed.
        CrossReferenceError: If a table references an unknown id.
        ValidationError: If the case violates a validation rule.
    """
    if not isinstance(bundle, CaseBundle):
        bundle = CaseBundle.at(bundle)
    if config is None:
        config = load_config(bundle.config_path)

    buses_t = _Table(bundle, "buses.csv")
    buses = tuple(
        Bus(
            id=buses_t.text(row, line, "bus_id"),
            voltage_kv=buses_t.number(row, line, "voltage_kv"),
            county=row["county_fips"],
            region=row["region"],
            name=row["name"],
        )
        for line, row in buses_t.rows()
    )
    bus_ids = {b.id for b in buses}

    lines_t = _Table(bundle, "lines.csv")
    _check_refs(lines_t, "from_bus", bus_ids, "buses.csv", "line_id", "line")
    _check_refs(lines_t, "to_bus", bus_ids, "buses.csv", "line_id", "line")
    lines = tuple(
        Line(
            id=lines_t.text(row, line, "line_id"),
            from_bus=row["from_bus"],
            to_bus=row["to_bus"],
            reactance_pu=lines_t.number(row, line, "reactance_pu"),
            capacity_mw=lines_t.number(row, line, "capacity_mw", default=math.inf),
            length_mi=lines_t.number(row, line, "length_mi", default=0.0),
            voltage_kv=lines_t.number(row, line, "voltage_kv", default=0.0),
        )
        for line, row in lines_t.rows()
    )

    profiles, profile_hours = load_profiles(bundle)
    gens_t = _Table(bundle, "generators.csv")
    _check_refs(gens_t, "bus_id", bus_ids, "buses.csv", "gen_id", "generator")
    generators = tuple(
        GenerationUnit(
            id=gens_t.text(row, line, "gen_id"),
            bus=row["bus_id"],
            fuel=Fuel.parse(row["fuel"]),
            capacity_mw=gens_t.number(row, line, "capacity_mw"),
            cost_per_mwh=gens_t.number(row, line, "cost_per_mwh", default=0.0),
            emission_t_per_gwh=gens_t.number(row, line, "emission_t_per_gwh", default=0.0),
            ramp_up_mw_per_h=gens_t.number(row, line, "ramp_up_mw_per_h", default=math.inf),
            ramp_down_mw_per_h=gens_t.number(row, line, "ramp_down_mw_per_h", default=math.inf),
            capability_profile=profiles.get(row["gen_id"], ()),
        )
        for line, row in gens_t.rows()
    )
    unknown = sorted(set(profiles) - {g.id for g in generators})
    if unknown:
        raise CrossReferenceError(
            f"gen_profiles.csv references generators {unknown} absent from generators.csv"
        )

    loads: tuple[LoadPoint, ...] = ()
    loads_t = _read(bundle, "loads.csv")
    if loads_t is not None:
        _check_refs(loads_t, "bus_id", bus_ids, "buses.csv", "load_id", "load")
        loads = tuple(
            LoadPoint(
                id=loads_t.text(row, line, "load_id"),
                bus=row["bus_id"],
                peak_mw=loads_t.number(row, line, "peak_mw"),
                region=row["region"],
            )
            for line, row in loads_t.rows()
        )

    counties = _load_counties(bundle)

    curves = load_curves(bundle)
    curve_hours = {len(c) for months in curves.values() for c in months.values()}
    hours = profile_hours or (curve_hours.pop() if len(curve_hours) == 1 else HOURS_PER_DAY)

    case = GridCase(
        buses=buses,
        lines=lines,
        generators=generators,
        loads=loads,
        counties=counties,
        time_grid=TimeGrid(hours=hours),
        loss_rate=config.loss_rate,
        slack_buses=tuple(config.slack_buses),
        name=bundle.root.name,
    )
    if not case.slack_buses:
        case = replace(case, slack_buses=default_slack_buses(case))

    if validate:
        report = validate_case(case)
        if not report.valid:
            locations = _locate(bundle)
            lines_out = [
                f"{locations.get((issue.entity, issue.entity_id), bundle.root.name)}: "
                f"{issue.code} {issue.message}"
                for issue in report.errors
            ]
            raise ValidationError(report, "invalid case:\n  " + "\n  ".join(lines_out))
        for issue in report.issues:
            logger.warning("%s %s", issue.code, issue.message)
    logger.info(
        "loaded %s: %d buses, %d lines, %d generators, %d loads, %d counties",
        case.name,
        len(buses),
        len(lines),
        len(generators),
        len(loads),
        len(counties),
    )
    return case


def _load_counties(bundle: CaseBundle) -> tuple[County, ...]:
    table = _read(bundle, "counties.csv")
    if table is None:
        return ()
    has_penetration = "penetration" in table.frame.columns
    counties = [
        County(
            fips=table.text(row, line, "fips"),
            state=row["state"],
            population=table.number(row, line, "population"),
            penetration=(
                table.number(row, line, "penetration")
                if has_penetration and row.get("penetration", "") != ""
                else None
            ),
        )
        for line, row in table.rows()
    ]
    fuel_t = _read(bundle, "state_fuel.csv")
    if fuel_t is None:
        return tuple(counties)
    states = {c.state for c in counties}
    _check_refs(fuel_t, "state", states, "counties.csv", "state", "state")
    state_gallons = {
        fuel_t.text(row, line, "state"): fuel_t.number(row, line, "annual_gallons")
        for line, row in fuel_t.rows()
    }
    gallons = allocate_fuel(counties, state_gallons)
    return tuple(replace(c, annual_gallons=gallons[c.fips]) for c in counties)


def _write_frame(frame: pd.DataFrame, path: Path) -> None:
    write_atomic(path, frame.to_csv(index=False, lineterminator="\n"))


def write_atomic(path: Path, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def write_case(
    case: GridCase,
    directory: Path | str,
    *,
    curves: Mapping[str, Mapping[int, np.ndarray]] | None = None,
) -> CaseBundle:
    """Write a case (and optional regional curves) as a bundle.

    County fuel is written as state totals, so a reloaded case carries the
    population allocation of those totals.
    """
    root = Path(directory)
    tables: dict[str, list[dict[str, Any]]] = {
        "buses.csv": [
            {
                "bus_id": b.id,
                "name": b.name,
                "voltage_kv": b.voltage_kv,
                "county_fips": b.county,
                "region": b.region,
            }
            for b in case.buses
        ],
        "lines.csv": [
            {
                "line_id": ln.id,
                "from_bus": ln.from_bus,
                "to_bus": ln.to_bus,
                "reactance_pu": ln.reactance_pu,
                "capacity_mw": ln.capacity_mw,
                "length_mi": ln.length_mi,
                "voltage_kv": ln.voltage_kv,
            }
            for ln in case.lines
        ],
        "generators.csv": [
            {
                "gen_id": g.id,
                "bus_id": g.bus,
                "fuel": g.fuel.value,
                "capacity_mw": g.capacity_mw,
                "cost_per_mwh": g.cost_per_mwh,
                "emission_t_per_gwh": g.emission_t_per_gwh,
                "ramp_up_mw_per_h": g.ramp_up_mw_per_h,
                "ramp_down_mw_per_h": g.ramp_down_mw_per_h,
            }
            for g in case.generators
        ],
        "gen_profiles.csv": [
            {"gen_id": g.id, "hour": h + 1, "per_unit": v}
            for g in case.generators
            for h, v in enumerate(g.capability_profile)
        ],
        "loads.csv": [
            {"load_id": ld.id, "bus_id": ld.bus, "peak_mw": ld.peak_mw, "region": ld.region}
            for ld in case.loads
        ],
    }
    if case.counties:
        county_rows = []
        for c in case.counties:
            entry: dict[str, Any] = {"fips": c.fips, "state": c.state, "population": c.population}
            if any(x.penetration is not None for x in case.counties):
                entry["penetration"] = "" if c.penetration is None else c.penetration
            county_rows.append(entry)
        tables["counties.csv"] = county_rows
        totals: dict[str, float] = {}
        for c in case.counties:
            totals[c.state] = totals.get(c.state, 0.0) + c.annual_gallons
        tables["state_fuel.csv"] = [
            {"state": state, "annual_gallons": gallons} for state, gallons in totals.items()
        ]
    if curves:
        tables["regional_curves.csv"] = [
            {"region": region, "month": month, "hour": h + 1, "per_unit": float(v)}
            for region, months in curves.items()
            for month, curve in sorted(months.items())
            for h, v in enumerate(curve)
        ]

    for name, rows in tables.items():
        frame = pd.DataFrame(rows, columns=_columns(name, rows))
        _write_frame(frame, root / name)
    config = {"loss_rate": case.loss_rate, "slack_buses": list(case.slack_buses)}
    write_atomic(root / CONFIG_FILE, yaml.safe_dump(config, sort_keys=True))
    logger.info("wrote bundle %s", root)
    return CaseBundle(root)


def _columns(name: str, rows: list[dict[str, Any]]) -> list[str]:
    columns = list(SCHEMAS[name])
    for row in rows:
        columns.extend(k for k in row if k not in columns)
    return columns

