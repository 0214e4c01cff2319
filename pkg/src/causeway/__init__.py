"""Causal DAG workbench: d-separation, back-door adjustment, conditional
independence testing, and IPW effect estimation over categorical data."""

__version__ = "0.1.0"
