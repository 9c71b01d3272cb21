"""CLI command handlers."""

from gridcarbon.cli.commands.dispatch import run_dispatch
from gridcarbon.cli.commands.ev_dispatch import run_ev_dispatch
from gridcarbon.cli.commands.ptdf import run_ptdf
from gridcarbon.cli.commands.sweep import run_sweep
from gridcarbon.cli.commands.synth import run_synth
from gridcarbon.cli.commands.upgrade import run_upgrade
from gridcarbon.cli.commands.validate import run_validate
from gridcarbon.cli.commands.version import run_version

__all__ = [
    "run_dispatch",
    "run_ev_dispatch",
    "run_ptdf",
    "run_sweep",
    "run_synth",
    "run_upgrade",
    "run_validate",
    "run_version",
]
