"""Exact Newton-polyhedron invariants: local h-polynomials, monodromy, zeta functions and pole verdicts."""

from .geometry import NewtonPolyhedron, Polynomial, build_newton

__all__ = ["NewtonPolyhedron", "Polynomial", "build_newton"]
__version__ = "0.1.0"
