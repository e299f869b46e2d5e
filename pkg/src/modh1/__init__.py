"""Exact first cohomology of modular groups acting on integral binary forms."""

__version__ = "0.1.0"
