"""Exact E8 / H4 folding toolkit."""

__version__ = "0.1.0"
