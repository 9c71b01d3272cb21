"""Representative days and hourly bus loads.

A region's representative day for a month is the mean load of each hour
over the month's days, divided by the region's annual peak. Day sets
group months into the days a study dispatches (twelve months or four
seasons) and carry the calendar weights used to annualize results.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np
import pandas as pd

from ..errors import ConfigError, IncompleteHistory, InputError, MissingRegionCurve
from ..grid.model import GridCase

HOURS_PER_YEAR = 8760

# Days per month of a non-leap year.
MONTH_DAYS = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)

# Region -> month (1..12) -> per-unit hourly curve.
RegionalCurves = Mapping[str, Mapping[int, np.ndarray]]


@dataclass(frozen=True)
class RepresentativeDay:
    """Normalized load shape of one region and month.

    Attributes:
        region: Region identifier.
        month: Month 1..12.
        curve: Per-unit hourly values, normalized by the annual peak.
    """

    region: str
    month: int
    curve: np.ndarray


def representative_days(
    history: Mapping[str, Sequence[float]] | pd.DataFrame,
) -> list[RepresentativeDay]:
    """Monthly representative days from a year of hourly regional load.

    Args:
        history: 8760 hourly values per region (columns of a frame or
            entries of a mapping), starting January 1 at hour 0.

    Returns:
        Twelve days per region, regions in input order.

    Raises:
        IncompleteHistory: If a region lacks hours or contains gaps.
    """
    frame = pd.DataFrame(history) if not isinstance(history, pd.DataFrame) else history
    if len(frame) != HOURS_PER_YEAR:
        raise IncompleteHistory(
            f"hourly history has {len(frame)} rows, expected {HOURS_PER_YEAR}"
        )
    frame = frame.reset_index(drop=True).astype(float)
    missing = frame.columns[frame.isna().any()].tolist()
    if missing:
        raise IncompleteHistory(f"hourly history has gaps in regions {missing}")

    # Any non-leap year gives the month and hour of each row.
    stamps = pd.date_range("2019-01-01", periods=HOURS_PER_YEAR, freq="h")
    means = frame.groupby([stamps.month, stamps.hour]).mean()

    days: list[RepresentativeDay] = []
    for region in frame.columns:
        peak = float(frame[region].max())
        if peak <= 0:
            raise IncompleteHistory(f"region {region} has no positive load")
        for month in range(1, 13):
            curve = means.loc[month, region].to_numpy(dtype=float) / peak
            days.append(RepresentativeDay(region=str(region), month=month, curve=curve))
    return days


def curves_by_region(days: Sequence[RepresentativeDay]) -> dict[str, dict[int, np.ndarray]]:
    """Index representative days as region -> month -> curve."""
    curves: dict[str, dict[int, np.ndarray]] = {}
    for day in days:
        curves.setdefault(day.region, {})[day.month] = day.curve
    return curves


@dataclass(frozen=True)
class StudyDay:
    """A dispatched day: the months it stands for and its annual weight.

    Attributes:
        label: Name used in reports and variable names.
        months: Months averaged into the day's curves.
        weight: Days of a non-leap year represented.
    """

    label: str
    months: tuple[int, ...]
    weight: float


MONTHLY_DAYS = tuple(
    StudyDay(label=f"m{m:02d}", months=(m,), weight=float(MONTH_DAYS[m - 1]))
    for m in range(1, 13)
)

SEASONAL_DAYS = (
    StudyDay(label="DJF", months=(12, 1, 2), weight=90.0),
    StudyDay(label="MAM", months=(3, 4, 5), weight=92.0),
    StudyDay(label="JJA", months=(6, 7, 8), weight=92.0),
    StudyDay(label="SON", months=(9, 10, 11), weight=91.0),
)

DAY_SETS: dict[str, tuple[StudyDay, ...]] = {
    "months": MONTHLY_DAYS,
    "seasons": SEASONAL_DAYS,
}


def day_set(name: str, months: Sequence[int] | None = None) -> tuple[StudyDay, ...]:
    """Look up a day set by name, optionally restricted to some months.

    Raises:
        ConfigError: For an unknown name or months outside 1..12.
    """
    try:
        days = DAY_SETS[name]
    except KeyError:
        raise ConfigError(
            f"unknown day set {name!r}, expected one of {sorted(DAY_SETS)}"
        ) from None
    if months is None:
        return days
    wanted = set(months)
    if not wanted <= set(range(1, 13)):
        raise ConfigError(f"months must lie in 1..12, got {sorted(wanted)}")
    return tuple(day for day in days if wanted & set(day.months))


def day_curves(curves: RegionalCurves, day: StudyDay) -> dict[str, np.ndarray]:
    """Region -> curve of a study day (the mean of its months' curves).

    Raises:
        MissingRegionCurve: If a region lacks one of the day's months.
    """
    result: dict[str, np.ndarray] = {}
    for region, monthly in curves.items():
        absent = [m for m in day.months if m not in monthly]
        if absent:
            raise MissingRegionCurve(f"region {region} has no curve for months {absent}")
        result[region] = np.mean([np.asarray(monthly[m], float) for m in day.months], axis=0)
    return result


def scale_bus_loads(case: GridCase, curves: Mapping[str, Sequence[float]]) -> np.ndarray:
    """Hourly demand per bus: each load's peak times its region's curve.

    Args:
        case: Case whose loads are scaled.
        curves: Region -> per-unit hourly curve for one day.

    Returns:
        Buses x hours array in case bus order, MW.

    Raises:
        MissingRegionCurve: If a load's region has no curve.
    """
    loads = np.zeros((len(case.buses), case.hours))
    for load in case.loads:
        if load.region not in curves:
            raise MissingRegionCurve(
                f"load {load.id} is in region {load.region!r} which has no curve"
            )
        curve = np.asarray(curves[load.region], dtype=float)
        if curve.shape != (case.hours,):
            raise InputError(
                f"curve of region {load.region} has {curve.size} hours, "
                f"case horizon is {case.hours}"
            )
        loads[case.bus_index[load.bus]] += load.peak_mw * curve
    return loads


def flat_curves(case: GridCase, level: float = 1.0) -> dict[str, np.ndarray]:
    """A constant curve for every region of a case."""
    return {load.region: np.full(case.hours, level) for load in case.loads}

