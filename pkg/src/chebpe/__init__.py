"""Chebyshev-Tau spectral solver for the wide-angle parabolic equation."""

__version__ = "0.1.0"
