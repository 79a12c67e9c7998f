"""Three-homogeneous-weight codes over finite chain rings and the
strongly walk-regular graphs they generate."""

__version__ = "0.1.0"
