"""Exact computer algebra for polynomial differential forms under the diagonal S_n action."""

__version__ = "0.1.0"
