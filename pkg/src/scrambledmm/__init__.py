"""Scrambled quasi-Monte Carlo draws and simulation-based moment estimators."""

__version__ = "0.1.0"
