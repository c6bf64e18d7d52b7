"""Equivariant quantum cohomology of the Hilbert scheme of points in the plane."""
