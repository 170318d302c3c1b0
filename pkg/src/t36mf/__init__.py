"""Matrix factorizations of x(x - y^2)(x - l*y^2) for first-level modules."""

__version__ = "0.1.0"
