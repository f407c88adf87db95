"""
Utility functions for lefschetz-certify.
"""

from math import gcd
from typing import Iterable, Sequence, Tuple


def int_vector(values: Iterable) -> Tuple[int, ...]:
    """
    Return values as a tuple of Python ints.

    Accepts numpy integer scalars. Floats and bools raise TypeError.
    """
    out = []
    for v in values:
        if isinstance(v, bool) or not hasattr(v, "__index__"):
            raise TypeError(f"Expected an integer entry, got {v!r}")
        out.append(int(v))
    return tuple(out)


def vector_gcd(vector: Sequence[int]) -> int:
    """gcd of the entries; 0 for the zero vector."""
    g = 0
    for v in vector:
        g = gcd(g, int(v))
    return g


def is_zero_vector(vector: Sequence[int]) -> bool:
    return all(v == 0 for v in vector)


def is_primitive(vector: Sequence[int]) -> bool:
    """
    True iff the vector is nonzero and not a proper multiple of another
    integer vector. The class of a nonseparating simple closed curve is
    always primitive.
    """
    return vector_gcd(vector) == 1


def ceil_div(a: int, b: int) -> int:
    """Ceiling of a/b for integers, b > 0."""
    return -((-a) // b)
