"""Exact real-analysis kernel: number codecs, truncated series, expressions,
limits, infinite series, Fekete limits and constructive transcendental numbers."""
from .errors import KernelError

__version__ = "0.1.0"

__all__ = ["KernelError", "__version__"]
