"""DC power-flow emissions planning for fleet electrification."""

__version__ = "0.1.0"
