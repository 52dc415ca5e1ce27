"""
tpcodes package for constructing Cayley graphs and finding, verifying and ruling out total perfect codes.
"""

__version__ = "0.1.0"
