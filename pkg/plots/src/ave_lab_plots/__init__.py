"""Renders ave-lab unit-circle trace CSV files into figure panels."""

from .render import TraceCsv, load_trace_csv, render, winding_of_curve

__version__ = "0.1.0"
