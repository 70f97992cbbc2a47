"""Spinor geometry of Fano zero loci in orthogonal Grassmannians."""

__version__ = "0.1.0"
