"""Exact affine Yangian of gl(1) on plane partitions, 3D bosons and 3-Jack polynomials."""

__version__ = "0.1.0"
