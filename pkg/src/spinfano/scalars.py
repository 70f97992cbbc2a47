"""Exact arithmetic in Q(sqrt 2).

Elements are stored as a pair of Fractions ``a + b*sqrt2``.  Plain ``int`` and
``Fraction`` values are accepted anywhere a scalar is expected, and the
linear algebra in :mod:`spinfano.linalg` works with any mix of the three.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = ["QS2", "SQRT2", "Scalar", "as_scalar", "parse_scalar", "is_zero", "fmt_scalar"]


class QS2:
    """An element ``a + b*sqrt(2)`` with rational ``a`` and ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def _coerce(x):
        if isinstance(x, QS2):
            return x
        if isinstance(x, (int, Fraction, Rational)):
            return QS2(x, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QS2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QS2(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QS2(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QS2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``a^2 - 2 b^2``; zero only for the zero element."""
        return self.a * self.a - 2 * self.b * self.b

    def inverse(self) -> "QS2":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt2)")
        return QS2(self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out, base = QS2(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def simplify(self):
        """Return a ``Fraction`` when the irrational part vanishes."""
        return self.a if self.b == 0 else self

    def __repr__(self):
        return f"QS2({self.a}, {self.b})"

    def __str__(self):
        return fmt_scalar(self)


Scalar = Union[int, Fraction, QS2]

SQRT2 = QS2(0, 1)


def as_scalar(x) -> Scalar:
    if isinstance(x, QS2):
        return x.simplify()
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    return Fraction(x)


def is_zero(x) -> bool:
    return not x


_FACTOR = re.compile(r"([*/]?)(\d+|sqrt2|s2)")


def parse_scalar(text: str) -> Scalar:
    """Parse ``3``, ``-1/2``, ``sqrt2``, ``2*sqrt2``, ``-sqrt2/2``, ``1+sqrt2`` and similar.

    A term is a product of integers or ``sqrt2`` joined by ``*`` and ``/``,
    read left to right; terms are joined by ``+`` and ``-``.
    """
    s = text.replace(" ", "")
    inner = re.split(r"(?<=[0-9a-z])(?=[+-])", s)
    if len(inner) > 1:
        return as_scalar(sum((parse_scalar(t) for t in inner), Fraction(0)))
    sign = 1
    while s and s[0] in "+-":
        if s[0] == "-":
            sign = -sign
        s = s[1:]
    if not s:
        raise ValueError(f"bad scalar literal {text!r}")
    value: Scalar = Fraction(sign)
    pos = 0
    while pos < len(s):
        m = _FACTOR.match(s, pos)
        if not m or (pos == 0) != (m.group(1) == ""):
            raise ValueError(f"bad scalar literal {text!r}")
        f = SQRT2 if m.group(2) in ("sqrt2", "s2") else Fraction(int(m.group(2)))
        if m.group(1) == "/":
            if not f:
                raise ValueError(f"division by zero in {text!r}")
            value = value / f
        else:
            value = value * f
        pos = m.end()
    return as_scalar(value)


def fmt_scalar(x) -> str:
    if isinstance(x, QS2):
        if x.b == 0:
            return str(x.a)
        if x.a == 0:
            return "-" + _irr(-x.b) if x.b < 0 else _irr(x.b)
        sign = "+" if x.b > 0 else "-"
        return f"{x.a}{sign}{_irr(abs(x.b))}"
    return str(Fraction(x))


def _irr(b: Fraction) -> str:
    """``b*sqrt2`` for positive ``b``, without a unit coefficient."""
    if b == 1:
        return "sqrt2"
    if b.denominator != 1 and b.numerator == 1:
        return f"sqrt2/{b.denominator}"
    return f"{b}*sqrt2"
