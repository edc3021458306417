"""Exact verification suite for abelian-surface fibrations over the plane."""

__version__ = "0.1.0"
