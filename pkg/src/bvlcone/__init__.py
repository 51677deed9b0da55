"""Spectrahedral (BVL) approximation hierarchies and their scaling constants.

Two families of cones are covered: nonnegative forms on the sphere and
symmetric traveling-salesman cones on K_n and K_{n,n}.
"""

__version__ = "0.1.0"
