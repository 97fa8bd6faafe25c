"""Exact dyadic rationals ``n / 2**k``.

Every coordinate and matrix entry handled by the package is one of these.
Arithmetic is exact (Python ints), and the value is kept canonical so that
equality and hashing are structural.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering

MAX_LOG2_DENOMINATOR = 64

_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class DenominatorError(ValueError):
    """Raised when a value is not dyadic or exceeds the denominator bound."""


@total_ordering
class HalfRational:
    """Exact number ``numerator / 2**log2_denominator`` in canonical form.

    Canonical form means the numerator is odd, or the exponent is zero.
    """

    __slots__ = ("numerator", "log2_denominator")

    def __init__(self, numerator: int = 0, log2_denominator: int = 0):
        if isinstance(numerator, bool) or not isinstance(numerator, int):
            raise TypeError(f"numerator must be int, got {type(numerator).__name__}")
        if log2_denominator < 0:
            raise DenominatorError("log2_denominator must be non-negative")
        k = log2_denominator
        if numerator == 0:
            k = 0
        else:
            tz = (numerator & -numerator).bit_length() - 1
            shift = min(tz, k)
            numerator >>= shift
            k -= shift
        if k > MAX_LOG2_DENOMINATOR:
            raise DenominatorError(f"denominator 2**{k} exceeds bound 2**{MAX_LOG2_DENOMINATOR}")
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "log2_denominator", k)

    def __setattr__(self, name, value):
        raise AttributeError("HalfRational is immutable")

    @classmethod
    def coerce(cls, value) -> HalfRational:
        """Convert an int, Fraction, string (``"5"``, ``"-7/2"``) or HalfRational."""
        if isinstance(value, HalfRational):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a number here")
        if isinstance(value, int):
            return cls(value)
        if isinstance(value, Fraction):
            den = value.denominator
            if den & (den - 1):
                raise DenominatorError(f"{value} is not dyadic")
            return cls(value.numerator, den.bit_length() - 1)
        if isinstance(value, str):
            m = _PATTERN.match(value)
            if not m:
                raise ValueError(f"cannot parse {value!r} as a dyadic rational")
            num = int(m.group(1))
            den = int(m.group(2)) if m.group(2) else 1
            if den == 0:
                raise ZeroDivisionError(value)
            return cls.coerce(Fraction(num, den))
        raise TypeError(f"cannot convert {type(value).__name__} to HalfRational")

    # arithmetic --------------------------------------------------------

    def _aligned(self, other: HalfRational) -> tuple[int, int, int]:
        k = max(self.log2_denominator, other.log2_denominator)
        return (self.numerator << (k - self.log2_denominator),
                other.numerator << (k - other.log2_denominator), k)

    def __add__(self, other):
        try:
            other = HalfRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, k = self._aligned(other)
        return HalfRational(a + b, k)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = HalfRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, k = self._aligned(other)
        return HalfRational(a - b, k)

    def __rsub__(self, other):
        return HalfRational.coerce(other) - self

    def __mul__(self, other):
        try:
            other = HalfRational.coerce(other)
        except TypeError:
            return NotImplemented
        return HalfRational(self.numerator * other.numerator,
                            self.log2_denominator + other.log2_denominator)

    __rmul__ = __mul__

    def __neg__(self):
        return HalfRational(-self.numerator, self.log2_denominator)

    def __pos__(self):
        return self

    def __abs__(self):
        return HalfRational(abs(self.numerator), self.log2_denominator)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        return HalfRational(self.numerator ** n, self.log2_denominator * n)

    # comparison --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, HalfRational):
            return (self.numerator == other.numerator
                    and self.log2_denominator == other.log2_denominator)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.to_fraction() == other
        return NotImplemented

    def __lt__(self, other):
        try:
            other = HalfRational.coerce(other)
        except (TypeError, DenominatorError):
            return NotImplemented
        a, b, _ = self._aligned(other)
        return a < b

    def __hash__(self):
        if self.log2_denominator == 0:
            return hash(self.numerator)
        return hash(self.to_fraction())

    def __bool__(self):
        return self.numerator != 0

    # conversion --------------------------------------------------------

    def is_integer(self) -> bool:
        return self.log2_denominator == 0

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.log2_denominator)

    def __int__(self):
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return self.numerator

    def __float__(self):
        return float(self.to_fraction())

    def __str__(self):
        if self.log2_denominator == 0:
            return str(self.numerator)
        return f"{self.numerator}/{1 << self.log2_denominator}"

    def __repr__(self):
        return f"HalfRational({self})"


ZERO = HalfRational(0)
ONE = HalfRational(1)


def common_scale(values) -> tuple[list[int], int]:
    """Return integer numerators over a shared denominator ``2**k``, and ``k``."""
    values = [v if type(v) is HalfRational else HalfRational.coerce(v) for v in values]
    k = max((v.log2_denominator for v in values), default=0)
    return [v.numerator << (k - v.log2_denominator) for v in values], k
