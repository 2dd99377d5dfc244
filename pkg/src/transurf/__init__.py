"""Translation surfaces: numeric geometry and an exact replay of the constant-curvature elimination."""

__version__ = "0.1.0"
