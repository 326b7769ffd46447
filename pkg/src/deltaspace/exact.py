"""Exact ordered arithmetic in Q and Q(sqrt(D)).

Every number in the library is an ExactReal: either a rational p/q or a
quadratic surd a + b*sqrt(D) with a, b rational and D a squarefree integer
>= 2.  Comparison, addition, multiplication and division are exact; no
floating point is ever consulted for a decision.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction


class ExactError(Exception):
    pass


class MixedRadicands(ExactError):
    """Two surds with different radicands met in an ordered operation."""


class DivisionByZero(ExactError):
    pass


class ParseError(ExactError):
    pass


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, m) with n = s*s*m and m squarefree."""
    if n <= 0:
        raise ValueError("radicand must be positive")
    s, m, p = 1, 1, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            m *= p
        p += 1 if p == 2 else 2
    return s, m * n


class ExactReal:
    """Immutable number a + b*sqrt(d); d == 0 exactly when b == 0 (rational)."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=0):
        a = Fraction(a)
        b = Fraction(b)
        if b == 0:
            d = 0
        else:
            if d < 2:
                raise ValueError("surd radicand must be >= 2")
            s, m = _squarefree_split(d)
            if m == 1:
                # perfect square: collapse to a rational
                a, b, d = a + b * s, Fraction(0), 0
            else:
                b, d = b * s, m
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, *_):
        raise AttributeError("ExactReal is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def rational(p, q=1) -> "ExactReal":
        return ExactReal(Fraction(p, q))

    @staticmethod
    def sqrt(d: int) -> "ExactReal":
        return ExactReal(0, 1, d)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    # -- coercion helpers ----------------------------------------------

    @staticmethod
    def _coerce(x) -> "ExactReal":
        if isinstance(x, ExactReal):
            return x
        if isinstance(x, (int, Fraction)):
            return ExactReal(x)
        raise TypeError(f"cannot coerce {x!r} to ExactReal")

    def _common_radicand(self, other: "ExactReal") -> int:
        if self.d and other.d and self.d != other.d:
            raise MixedRadicands(f"sqrt({self.d}) vs sqrt({other.d})")
        return self.d or other.d

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        d = self._common_radicand(other)
        return ExactReal(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return ExactReal(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        d = self._common_radicand(other)
        a = self.a * other.a + self.b * other.b * d
        b = self.a * other.b + self.b * other.a
        return ExactReal(a, b, d)

    __rmul__ = __mul__

    def inverse(self) -> "ExactReal":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational:
            return ExactReal(1 / self.a)
        # 1/(a+b*sqrt(d)) = (a-b*sqrt(d)) / (a^2 - b^2 d); the norm is
        # nonzero since sqrt(d) is irrational.
        norm = self.a * self.a - self.b * self.b * self.d
        return ExactReal(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- order ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d), by case analysis on a, b."""
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        if self.a > 0 and self.b > 0:
            return 1
        if self.a < 0 and self.b < 0:
            return -1
        # opposite signs: sign decided by a^2 vs b^2 d
        lhs, rhs = self.a * self.a, self.b * self.b * self.d
        if self.a > 0:  # b < 0
            return (lhs > rhs) - (lhs < rhs)
        return (rhs > lhs) - (rhs < lhs)

    def __eq__(self, other):
        if not isinstance(other, (ExactReal, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        if self.d and other.d and self.d != other.d:
            # sqrt(d) and sqrt(d') are linearly independent over Q for
            # distinct squarefree radicands, so the values differ.
            return False
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return (self - self._coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - self._coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - self._coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - self._coerce(other)).sign() >= 0

    def __float__(self):
        v = float(self.a)
        if self.b:
            v += float(self.b) * math.sqrt(self.d)
        return v

    def floor(self) -> int:
        if self.is_rational:
            return math.floor(self.a)
        n = math.floor(float(self))
        while self < n:
            n -= 1
        while self >= n + 1:
            n += 1
        return n

    # -- text form ------------------------------------------------------

    def __str__(self):
        if self.is_rational:
            return f"{self.a.numerator}/{self.a.denominator}"
        surd = f"{self.b.numerator}/{self.b.denominator}*sqrt({self.d})"
        if self.a == 0:
            return surd
        return f"{self.a.numerator}/{self.a.denominator}+{surd}"

    def __repr__(self):
        return f"ExactReal({self})"


_RAT = r"(-?\d+)/(\d+)"
_SURD_RE = re.compile(rf"^(?:{_RAT}\+)?{_RAT}\*sqrt\((\d+)\)$")
_RAT_RE = re.compile(rf"^{_RAT}$")


def parse(text: str) -> ExactReal:
    """Parse the bit-exact grammar: "p/q" or "p/q+r/s*sqrt(D)" (rational
    part omitted when zero, signs attached to numerators)."""
    text = text.strip()
    m = _RAT_RE.match(text)
    if m:
        p, q = int(m.group(1)), int(m.group(2))
        if q == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return ExactReal(Fraction(p, q))
    m = _SURD_RE.match(text)
    if m:
        ap, aq, bp, bq, d = m.groups()
        if aq == "0" or bq == "0":
            raise ParseError(f"zero denominator in {text!r}")
        a = Fraction(int(ap), int(aq)) if ap is not None else Fraction(0)
        b = Fraction(int(bp), int(bq))
        if b == 0 or int(d) < 2:
            raise ParseError(f"degenerate surd in {text!r}")
        x = ExactReal(a, b, int(d))
        if x.d != int(d):
            raise ParseError(f"radicand {d} is not squarefree in {text!r}")
        return x
    raise ParseError(f"cannot parse {text!r}")


def compare(x: ExactReal, y: ExactReal) -> int:
    """-1, 0 or 1 as x <, =, > y.  Raises MixedRadicands for surds over
    distinct radicands (ordering across fields is out of scope)."""
    return (x - y).sign()


def rational_between(lo: ExactReal, hi: ExactReal) -> Fraction:
    """Some rational strictly inside the open interval (lo, hi), found by
    exact dyadic bisection."""
    if not lo < hi:
        raise ValueError("need lo < hi")
    a, b = Fraction(lo.floor()), Fraction(hi.floor() + 1)
    while True:
        mid = (a + b) / 2
        m = ExactReal(mid)
        if lo < m < hi:
            return mid
        if m <= lo:
            a = mid
        else:
            b = mid
