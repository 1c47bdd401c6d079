"""Dynamical triangulations, their dual metric ribbon graphs, and Weil-Petersson volumes."""

__version__ = "0.1.0"
