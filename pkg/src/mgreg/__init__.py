"""Multigraded regularity of modules over standard N^k-graded polynomial rings."""

__version__ = "0.1.0"
