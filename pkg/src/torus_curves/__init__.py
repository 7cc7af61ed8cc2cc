"""Closed curves on the once-punctured torus as circular words in F2."""

__version__ = "0.1.0"
