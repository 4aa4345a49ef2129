"""Exact vortex solutions, point symmetries and invariant surfaces of the
incompressible 3D Navier-Stokes equations, with numerical verification
tooling."""

__version__ = "0.1.0"
