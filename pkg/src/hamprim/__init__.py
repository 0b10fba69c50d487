"""Hamilton cycles in orbital graphs of primitive groups of degree 2rs."""

__version__ = "0.1.0"
