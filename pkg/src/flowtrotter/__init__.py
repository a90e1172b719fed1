"""Flow-set Trotter compilation for 2D fermionic hopping models."""

__version__ = "0.1.0"
