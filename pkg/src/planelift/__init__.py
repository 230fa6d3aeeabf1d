"""Exact tools for liftings of collinear point tuples and the bracket
polynomials that cut out the liftable locus."""

__version__ = "0.1.0"
