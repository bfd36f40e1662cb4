"""Exact rational interval arithmetic.

Endpoints are `fractions.Fraction`, so +, -, * and integer powers are exact:
an interval computed from exact inputs genuinely encloses every real it
claims to.  Transcendental functions live in `rintervals`, which wraps
mpmath's outward-rounded intervals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rat = Union[int, Fraction]


class QInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Rat, hi: Rat | None = None):
        if hi is None:
            hi = lo
        lo = Fraction(lo)
        hi = Fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    # -- constructors ------------------------------------------------------

    @staticmethod
    def point(q: Rat) -> "QInterval":
        return QInterval(q, q)

    # -- basic queries -----------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, q: Rat) -> bool:
        return self.lo <= q <= self.hi

    def contains_interval(self, other: "QInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "QInterval") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def is_point(self) -> bool:
        return self.lo == self.hi

    # certified sign: +1 / -1 / 0 (contains zero but not a point at zero)
    def sign(self) -> int:
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return 0

    def mig(self) -> Fraction:
        """Smallest absolute value over the interval."""
        if self.lo > 0:
            return self.lo
        if self.hi < 0:
            return -self.hi
        return Fraction(0)

    def mag(self) -> Fraction:
        """Largest absolute value over the interval."""
        return max(abs(self.lo), abs(self.hi))

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self) -> "QInterval":
        return QInterval(-self.hi, -self.lo)

    def __add__(self, other) -> "QInterval":
        if isinstance(other, QInterval):
            return QInterval(self.lo + other.lo, self.hi + other.hi)
        return QInterval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __sub__(self, other) -> "QInterval":
        return self + (-other if isinstance(other, QInterval) else QInterval(-Fraction(other)))

    def __rsub__(self, other) -> "QInterval":
        return (-self) + other

    def __mul__(self, other) -> "QInterval":
        if isinstance(other, QInterval):
            cands = (
                self.lo * other.lo,
                self.lo * other.hi,
                self.hi * other.lo,
                self.hi * other.hi,
            )
            return QInterval(min(cands), max(cands))
        other = Fraction(other)
        if other >= 0:
            return QInterval(self.lo * other, self.hi * other)
        return QInterval(self.hi * other, self.lo * other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QInterval":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        if k == 0:
            return QInterval.point(1)
        if k % 2 == 1 or self.lo >= 0:
            return QInterval(self.lo**k, self.hi**k)
        if self.hi <= 0:
            return QInterval(self.hi**k, self.lo**k)
        # even power of an interval straddling zero
        return QInterval(0, max(self.lo**k, self.hi**k))

    def __abs__(self) -> "QInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return QInterval(0, self.mag())

    def intersect(self, other: "QInterval") -> "QInterval":
        return QInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def hull(self, other: "QInterval") -> "QInterval":
        return QInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    # -- certified comparisons against rationals ----------------------------

    def cmp(self, q: Rat) -> int | None:
        """-1 if the interval is certainly < q, +1 if certainly > q, 0 if the
        interval is the single point q, None if undecided."""
        if self.hi < q:
            return -1
        if self.lo > q:
            return 1
        if self.lo == q == self.hi:
            return 0
        return None

    def __repr__(self):
        return f"QInterval({self.lo}, {self.hi})"

    def __float__(self):
        return float(self.mid)


def qi_dot(coeffs, intervals) -> QInterval:
    """Exact interval of sum(c_j * I_j) for rational c_j."""
    acc = QInterval.point(0)
    for c, it in zip(coeffs, intervals):
        if c:
            acc = acc + it * c
    return acc
