"""Dual lattices of weight and exponent vectors.

Weight vectors live in the lattice N, exponent vectors of monomials in its
dual M; both are represented as plain tuples of Python ints, paired by the
standard unimodular dot product. Rational points of the associated real
vector spaces are tuples of Fractions. All arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .linalg import IntVec, dot

QVec = tuple[Fraction, ...]


def pairing(w: IntVec, m: IntVec) -> int:
    """Pair a weight vector w in N against an exponent vector m in M."""
    return dot(w, m)


def primitive(v) -> IntVec:
    """The primitive lattice vector spanning the same ray as v.

    Divides out the gcd of the coordinates; rejects the zero vector, whose
    primitive representative is undefined.
    """
    ints = tuple(int(a) for a in v)
    if any(int(a) != a for a in v):
        raise ValueError("primitive expects an integer vector")
    g = 0
    for a in ints:
        g = gcd(g, abs(a))
    if g == 0:
        raise ValueError("primitive of the zero vector is undefined")
    return tuple(a // g for a in ints)


def is_primitive(v: IntVec) -> bool:
    try:
        return primitive(v) == tuple(v)
    except ValueError:
        return False


def as_rational(v) -> QVec:
    return tuple(Fraction(a) for a in v)
