"""Exact arithmetic on [0, inf] and [0, 1].

Finite values are plain :class:`fractions.Fraction` objects. Infinity is the
singleton :data:`INF`, which orders above every finite value and absorbs
addition. No floating point is involved anywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union


class _Infinity:
    """The top element of the extended non-negative rationals."""

    _instance: "_Infinity | None" = None
    __slots__ = ()

    def __new__(cls) -> "_Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"

    def __hash__(self) -> int:
        return hash("pmlevels.INF")

    def __reduce__(self):
        return (_Infinity, ())

    def __eq__(self, other: object) -> bool:
        return other is self

    def __ne__(self, other: object) -> bool:
        return other is not self

    def __lt__(self, other: object) -> bool:
        if other is self or isinstance(other, Rational):
            return False
        return NotImplemented

    def __le__(self, other: object) -> bool:
        if other is self:
            return True
        if isinstance(other, Rational):
            return False
        return NotImplemented

    def __gt__(self, other: object) -> bool:
        if other is self:
            return False
        if isinstance(other, Rational):
            return True
        return NotImplemented

    def __ge__(self, other: object) -> bool:
        if other is self or isinstance(other, Rational):
            return True
        return NotImplemented

    def __add__(self, other: object) -> "_Infinity":
        if other is self:
            return self
        if isinstance(other, Rational):
            if other < 0:
                raise ValueError("extended non-negative addition with a negative operand")
            return self
        return NotImplemented

    __radd__ = __add__


INF = _Infinity()

ExtendedNonneg = Union[Fraction, _Infinity]
UnitRational = Fraction


def is_inf(value: object) -> bool:
    return value is INF


def ext(value: object) -> ExtendedNonneg:
    """Coerce ``value`` to an extended non-negative rational.

    Accepts ``INF``, ints, Fractions and strings in ``p``, ``p/q`` or ``inf``
    form. Floats are rejected since they would smuggle rounding into the core.
    """
    if value is INF:
        return INF
    if isinstance(value, str):
        return parse_ext(value)
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"not an exact value: {value!r}")
    if isinstance(value, (int, Fraction)):
        q = Fraction(value)
        if q < 0:
            raise ValueError(f"negative value {q}")
        return q
    raise TypeError(f"not an exact value: {value!r}")


def unit(value: object) -> Fraction:
    """Coerce ``value`` to a rational in [0, 1]."""
    if isinstance(value, str):
        return parse_unit(value)
    q = ext(value)
    if q is INF or q > 1:
        raise ValueError(f"value {value} outside [0, 1]")
    return q


_RATIONAL = re.compile(r"(\d+)(?:/(\d+))?")


def _parse_rational(text: str) -> Fraction:
    m = _RATIONAL.fullmatch(text.strip())
    if m is None:
        raise ValueError(f"malformed rational {text!r}")
    q = int(m.group(2)) if m.group(2) is not None else 1
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), q)


def parse_ext(text: str) -> ExtendedNonneg:
    """Parse ``"p"``, ``"p/q"`` or ``"inf"``."""
    if not isinstance(text, str):
        raise ValueError(f"expected a string, got {text!r}")
    if text.strip() == "inf":
        return INF
    q = _parse_rational(text)
    if q < 0:
        raise ValueError(f"negative value {text!r}")
    return q


def parse_unit(text: str) -> Fraction:
    q = parse_ext(text)
    if q is INF or q > 1:
        raise ValueError(f"value {text!r} outside [0, 1]")
    return q


def format_ext(value: ExtendedNonneg) -> str:
    """Lowest-terms text encoding; inverse of :func:`parse_ext`."""
    if value is INF:
        return "inf"
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def ext_add(a: ExtendedNonneg, b: ExtendedNonneg) -> ExtendedNonneg:
    if a is INF or b is INF:
        return INF
    return a + b


def ext_compare(a: ExtendedNonneg, b: ExtendedNonneg) -> int:
    """Three-way comparison: -1, 0 or 1."""
    if a == b:
        return 0
    return -1 if a < b else 1
