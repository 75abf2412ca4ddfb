"""Publication-style figures from tradeoff-sweep CSV artifacts."""

__version__ = "0.1.0"

from .figures import plot_beampattern, plot_tradeoff
from .io import SchemaError, read_beampattern, read_manifest, read_tradeoff

__all__ = ["SchemaError", "plot_beampattern", "plot_tradeoff",
           "read_beampattern", "read_manifest", "read_tradeoff"]
