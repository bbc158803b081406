"""PixelNav: vision-only navigation over topological graphs with pixel-space MPPI."""

__version__ = "0.1.0"
