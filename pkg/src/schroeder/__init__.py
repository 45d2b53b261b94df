"""Spectral theory of composition operators with an interior fixed point, numerically."""
