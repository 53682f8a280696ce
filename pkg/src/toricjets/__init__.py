"""Exact certification of k-jet ampleness for T-Cartier divisors on
projective toric varieties, with a brute-force evaluation-map oracle."""

__version__ = "0.1.0"
