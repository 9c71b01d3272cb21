"""Case bundles, configuration, wind conversion, synthetic cases and reports."""

from .bundle import (
    CONFIG_FILE,
    SCHEMAS,
    CaseBundle,
    default_slack_buses,
    load_case,
    load_curves,
    load_profiles,
    write_atomic,
    write_case,
)
from .config import ENV_PREFIX, RunConfig, env_overrides, load_config, read_config_file
from .report import FORMATS, RunResults, dump_ptdf, emit_report
from .synth import TEMPLATES, synth_case, synth_curves
from .wind import CUT_IN_MPS, CUT_OUT_MPS, wind_to_per_unit

__all__ = [
    "CONFIG_FILE",
    "CUT_IN_MPS",
    "CUT_OUT_MPS",
    "ENV_PREFIX",
    "FORMATS",
    "SCHEMAS",
    "TEMPLATES",
    "CaseBundle",
    "RunConfig",
    "RunResults",
    "default_slack_buses",
    "dump_ptdf",
    "emit_report",
    "env_overrides",
    "load_case",
    "load_config",
    "load_curves",
    "load_profiles",
    "read_config_file",
    "synth_case",
    "synth_curves",
    "wind_to_per_unit",
    "write_atomic",
    "write_case",
]
