"""Exact half-integer arithmetic for spin labels and series parameters.

A ``HalfInt`` stores twice its value as a plain integer, so all selection
rules and summation bounds reduce to integer arithmetic and no spin label
ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering


@total_ordering
class HalfInt:
    """An exact half-integer, stored as a doubled integer."""

    __slots__ = ("twice",)

    def __init__(self, value=0, *, twice=None):
        if twice is not None:
            self.twice = int(twice)
            return
        if isinstance(value, HalfInt):
            self.twice = value.twice
        elif isinstance(value, int):
            self.twice = 2 * value
        elif isinstance(value, str):
            self.twice = _parse_twice(value)
        elif isinstance(value, Fraction):
            if value.denominator not in (1, 2):
                raise ValueError(f"{value} is not a half-integer")
            self.twice = value.numerator * (2 // value.denominator)
        elif isinstance(value, float):
            d = value * 2
            if d != int(d):
                raise ValueError(f"{value} is not a half-integer")
            self.twice = int(d)
        else:
            raise TypeError(f"cannot build HalfInt from {type(value).__name__}")

    @classmethod
    def from_twice(cls, twice):
        return cls(twice=twice)

    @property
    def is_integer(self):
        return self.twice % 2 == 0

    def as_fraction(self):
        return Fraction(self.twice, 2)

    def as_int(self):
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def __add__(self, other):
        return HalfInt(twice=self.twice + HalfInt(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(twice=self.twice - HalfInt(other).twice)

    def __rsub__(self, other):
        return HalfInt(other) - self

    def __neg__(self):
        return HalfInt(twice=-self.twice)

    def __mul__(self, other):
        # products of half-integers may leave the half-integer lattice,
        # so generic multiplication returns a Fraction
        if isinstance(other, int):
            return HalfInt(twice=self.twice * other)
        if isinstance(other, (HalfInt, Fraction)):
            return self.as_fraction() * _to_fraction(other)
        return NotImplemented

    __rmul__ = __mul__

    def __abs__(self):
        return HalfInt(twice=abs(self.twice))

    def __eq__(self, other):
        try:
            return self.twice == HalfInt(other).twice
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return self.twice < HalfInt(other).twice

    def __hash__(self):
        return hash(self.as_fraction())

    def __float__(self):
        return self.twice / 2

    def __int__(self):
        return self.as_int()

    def __bool__(self):
        return self.twice != 0

    def __str__(self):
        if self.is_integer:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self):
        return f"HalfInt('{self}')"


def _parse_twice(text):
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        num, den = int(num), int(den)
        if den == 2:
            return num
        if den == 1:
            return 2 * num
        raise ValueError(f"{text!r} is not a half-integer")
    return 2 * int(text)


def _to_fraction(x):
    if isinstance(x, HalfInt):
        return x.as_fraction()
    return Fraction(x)


def halfint(value):
    """Coerce ints, strings like "3/2", Fractions and floats to HalfInt."""
    return value if isinstance(value, HalfInt) else HalfInt(value)


def halfint_range(lo, hi):
    """All half-integers from lo to hi inclusive, in unit steps."""
    lo, hi = halfint(lo), halfint(hi)
    return [HalfInt(twice=t) for t in range(lo.twice, hi.twice + 1, 2)]
