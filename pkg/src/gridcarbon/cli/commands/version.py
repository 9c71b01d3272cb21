"""Version command implementation."""

import argparse


def run_version(args: argparse.Namespace) -> int:
    """Print the package version, and with ``--libraries`` the numerical stack.

    The library list is the one recorded in every run manifest.
    """
    from gridcarbon import __version__
    from gridcarbon.io.report import library_versions

    print(f"gridcarbon {__version__}")
    if getattr(args, "libraries", False):
        for name, version in library_versions().items():
            print(f"  {name} {version}")
    return 0
