"""Exact finite computations with Theta_n, its presheaves and the intertwining functor V."""

__version__ = "0.1.0"
