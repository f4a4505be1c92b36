"""Exact solvers and structural checks for P6-free graphs."""

__version__ = "0.1.0"
__author__ = "p6kit developers"
