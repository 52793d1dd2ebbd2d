"""Exact verification of local class field theory statements"""

__version__ = "0.1.0"
