"""Tournament solutions, choice-function operators and exact axiom checks."""

__version__ = "0.1.0"
