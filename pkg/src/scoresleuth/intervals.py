"""Closed rational intervals with optional unbounded endpoints.

The decision procedures in this package only ever compare rational numbers,
so intervals carry exact `fractions.Fraction` endpoints. `None` stands for an
unbounded side, and a dedicated empty interval is representable (distinct
from every point interval). Division by the point interval [0, 0] has no
meaningful result and returns `None` ("Undefined"); Undefined is a value for
callers to branch on, not an error.

Multiplication uses the convention that an indeterminate 0 * inf endpoint
product contributes both 0 and the signed infinity to the candidate
endpoints. That can over-approximate (e.g. [0,0] * [1,inf) -> [0,inf)) but
never under-approximates, which is the only direction that would break the
engine; products of bounded intervals and of sign-definite operands stay
exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

Rat = Union[Fraction, int]

# Tags for extended-value arithmetic inside mul().
_NEG_INF = "-inf"
_POS_INF = "+inf"


def _frac(x: Rat) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class RationalInterval:
    """A closed interval over the rationals, possibly unbounded or empty.

    Do not call the constructor with lo > hi; use `interval`, `point`,
    `at_least`, `at_most`, `unbounded` or `EMPTY`.
    """

    lo: Optional[Fraction]  # None = unbounded below
    hi: Optional[Fraction]  # None = unbounded above
    is_empty: bool = False

    def __post_init__(self):
        if self.is_empty:
            return
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: {self.lo} > {self.hi}")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def closed(lo: Rat, hi: Rat) -> "RationalInterval":
        return RationalInterval(_frac(lo), _frac(hi))

    @staticmethod
    def point(x: Rat) -> "RationalInterval":
        x = _frac(x)
        return RationalInterval(x, x)

    @staticmethod
    def at_least(lo: Rat) -> "RationalInterval":
        return RationalInterval(_frac(lo), None)

    @staticmethod
    def at_most(hi: Rat) -> "RationalInterval":
        return RationalInterval(None, _frac(hi))

    @staticmethod
    def unbounded() -> "RationalInterval":
        return RationalInterval(None, None)

    # -- predicates --------------------------------------------------------

    def contains(self, value) -> bool:
        """Exact closed-interval membership. `value` may be any type that
        compares exactly against Fraction (int, Fraction, SqrtRational)."""
        if self.is_empty:
            return False
        if self.lo is not None and not (self.lo <= value):
            return False
        if self.hi is not None and not (value <= self.hi):
            return False
        return True

    def is_point(self) -> bool:
        return not self.is_empty and self.lo is not None and self.lo == self.hi

    # -- arithmetic --------------------------------------------------------

    def add(self, other: "RationalInterval") -> "RationalInterval":
        if self.is_empty or other.is_empty:
            return EMPTY
        lo = None if self.lo is None or other.lo is None else self.lo + other.lo
        hi = None if self.hi is None or other.hi is None else self.hi + other.hi
        return RationalInterval(lo, hi)

    def neg(self) -> "RationalInterval":
        if self.is_empty:
            return EMPTY
        return RationalInterval(
            None if self.hi is None else -self.hi,
            None if self.lo is None else -self.lo,
        )

    def sub(self, other: "RationalInterval") -> "RationalInterval":
        return self.add(other.neg())

    def mul(self, other: "RationalInterval") -> "RationalInterval":
        if self.is_empty or other.is_empty:
            return EMPTY
        a_ends = [(self.lo, _NEG_INF), (self.hi, _POS_INF)]
        b_ends = [(other.lo, _NEG_INF), (other.hi, _POS_INF)]
        candidates = []
        for av, atag in a_ends:
            for bv, btag in b_ends:
                candidates.extend(_end_product(av, atag, bv, btag))
        lo = _POS_INF
        hi = _NEG_INF
        for c in candidates:
            lo = _ext_min(lo, c)
            hi = _ext_max(hi, c)
        return RationalInterval(
            None if lo == _NEG_INF else lo,
            None if hi == _POS_INF else hi,
        )

    def div(self, other: "RationalInterval") -> Optional["RationalInterval"]:
        """Interval quotient; returns None (Undefined) when dividing by the
        point interval [0, 0]."""
        if self.is_empty or other.is_empty:
            return EMPTY
        b_lo, b_hi = other.lo, other.hi
        if b_lo == 0 and b_hi == 0:
            return None
        below = b_lo is None or b_lo < 0
        above = b_hi is None or b_hi > 0
        if below and above:
            # 0 strictly inside the divisor: no finite bound survives.
            return RationalInterval.unbounded()
        if not below:  # divisor within [0, +inf)
            inv_lo = Fraction(0) if b_hi is None else Fraction(1) / b_hi
            inv_hi = None if b_lo == 0 else Fraction(1) / b_lo
        else:  # divisor within (-inf, 0]
            inv_hi = Fraction(0) if b_lo is None else Fraction(1) / b_lo
            inv_lo = None if b_hi == 0 else Fraction(1) / b_hi
        return self.mul(RationalInterval(inv_lo, inv_hi))

    def intersect(self, other: "RationalInterval") -> "RationalInterval":
        if self.is_empty or other.is_empty:
            return EMPTY
        lo = _ext_max2(self.lo, other.lo)
        hi = _ext_min2(self.hi, other.hi)
        if lo is not None and hi is not None and lo > hi:
            return EMPTY
        return RationalInterval(lo, hi)

    def integer_clamp(self) -> "RationalInterval":
        """Tightest interval with integer endpoints containing all integers
        of this interval: [ceil(lo), floor(hi)]."""
        if self.is_empty:
            return EMPTY
        lo = None if self.lo is None else Fraction(math.ceil(self.lo))
        hi = None if self.hi is None else Fraction(math.floor(self.hi))
        if lo is not None and hi is not None and lo > hi:
            return EMPTY
        return RationalInterval(lo, hi)

    # operator sugar; div is deliberately a named method because it may
    # return None.
    __add__ = add
    __sub__ = sub
    __mul__ = mul

    def __str__(self) -> str:
        if self.is_empty:
            return "empty"
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "+inf" if self.hi is None else str(self.hi)
        return f"[{lo}, {hi}]"


EMPTY = RationalInterval(None, None, is_empty=True)


def _end_product(av, atag, bv, btag):
    """Candidate products of two interval endpoints. Infinite endpoints are
    encoded by value None plus the side tag. An indeterminate 0*inf yields
    both 0 and the signed infinity (see module docstring)."""
    a_inf = av is None
    b_inf = bv is None
    if not a_inf and not b_inf:
        return [av * bv]
    if a_inf and b_inf:
        pos = (atag == _POS_INF) == (btag == _POS_INF)
        return [_POS_INF if pos else _NEG_INF]
    if a_inf:
        inf_tag, fin = atag, bv
    else:
        inf_tag, fin = btag, av
    if fin == 0:
        return [Fraction(0), inf_tag]
    pos = (inf_tag == _POS_INF) == (fin > 0)
    return [_POS_INF if pos else _NEG_INF]


def _ext_min(a, b):
    if a == _NEG_INF or b == _NEG_INF:
        return _NEG_INF
    if a == _POS_INF:
        return b
    if b == _POS_INF:
        return a
    return min(a, b)


def _ext_max(a, b):
    if a == _POS_INF or b == _POS_INF:
        return _POS_INF
    if a == _NEG_INF:
        return b
    if b == _NEG_INF:
        return a
    return max(a, b)


def _ext_max2(a, b):
    # max of two lower endpoints where None means -inf
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _ext_min2(a, b):
    # min of two upper endpoints where None means +inf
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def interval_payload(interval: RationalInterval):
    """JSON-friendly form: "empty" or a [lo, hi] pair of rational strings,
    with null for an unbounded side."""
    if interval.is_empty:
        return "empty"
    return [
        None if interval.lo is None else str(interval.lo),
        None if interval.hi is None else str(interval.hi),
    ]
