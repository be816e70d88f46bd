"""Exhaustive generation of extremal graphs with a fixed number of
perfect matchings."""

__version__ = "0.1.0"
