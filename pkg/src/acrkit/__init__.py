"""acrkit: absolute concentration robustness for mass-action networks."""

__version__ = "0.1.0"
