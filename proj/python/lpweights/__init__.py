"""Weights for L_p convolution algebras on abelian groups, with certificates."""

from fractions import Fraction

from ._core import *  # noqa: F401,F403
from ._core import Weight, conv_at


def fraction(text):
    """Parse a "num/den" string returned by the core module."""
    return Fraction(text)


def conv_interval(u: Weight, x: str, trunc: str = "full"):
    lo, hi = conv_at(u, x, trunc)
    return Fraction(lo), Fraction(hi)
