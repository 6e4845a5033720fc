"""Exact splitting-invariant cocycles for split simply connected real groups."""
from .rootsys import RootSystem, build, parse_type

__version__ = "0.1.0"

__all__ = ["RootSystem", "build", "parse_type", "__version__"]
