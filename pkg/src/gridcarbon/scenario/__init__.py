"""Study scenarios: representative days, renewable scaling, sweeps and annual totals."""

from .annual import (
    DayOutcome,
    annual_total,
    annualize,
    clamp_congestion,
    congestion_induced,
)
from .days import (
    DAY_SETS,
    MONTH_DAYS,
    MONTHLY_DAYS,
    SEASONAL_DAYS,
    RegionalCurves,
    RepresentativeDay,
    StudyDay,
    curves_by_region,
    day_curves,
    day_set,
    flat_curves,
    representative_days,
    scale_bus_loads,
)
from .renewables import (
    CapacityMix,
    apply_renewable_scaling,
    capacity_mix,
    renewable_level,
    renewable_scale_factor,
    scale_to_level,
)
from .sweep import (
    CONSTRAINED,
    MODES,
    RELAXED,
    ScenarioSpec,
    load_spec,
    project_case_growth,
    run_sweep,
)

__all__ = [
    "CONSTRAINED",
    "DAY_SETS",
    "MODES",
    "MONTHLY_DAYS",
    "MONTH_DAYS",
    "RELAXED",
    "SEASONAL_DAYS",
    "CapacityMix",
    "DayOutcome",
    "RegionalCurves",
    "RepresentativeDay",
    "ScenarioSpec",
    "StudyDay",
    "annual_total",
    "annualize",
    "apply_renewable_scaling",
    "capacity_mix",
    "clamp_congestion",
    "congestion_induced",
    "curves_by_region",
    "day_curves",
    "day_set",
    "flat_curves",
    "load_spec",
    "project_case_growth",
    "renewable_level",
    "renewable_scale_factor",
    "representative_days",
    "run_sweep",
    "scale_bus_loads",
    "scale_to_level",
]
