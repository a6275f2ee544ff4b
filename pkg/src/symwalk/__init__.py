"""symwalk: exact spectral analysis of random walks on S_n and A_n."""

__version__ = "0.1.0"
