"""The rational function field K = F_q(T) and its valuations."""

from __future__ import annotations

import math

from .field import GF
from .poly import Poly, gcd

POS_INF = math.inf


class RatFunc:
    """num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, RatFunc) and den is None:
            self.num, self.den = num.num, num.den
            return
        if den is None:
            self.num, self.den = num, Poly.const(num.F, 1)
            return
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = num, Poly.const(num.F, 1)
            return
        if den.deg > 0:
            g = gcd(num, den)
            if g.deg > 0:
                num, den = num // g, den // g
        if den.lc != 1:
            inv = num.F.inv(den.lc)
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFunc":
        obj = object.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def from_int(cls, F: GF, n: int) -> "RatFunc":
        return cls(Poly.const(F, F(n)))

    @property
    def F(self) -> GF:
        return self.num.F

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        if isinstance(other, int):
            return RatFunc.from_int(self.F, other)
        return NotImplemented

    def is_poly(self) -> bool:
        return self.den.deg == 0

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        from .textfmt import format_ratfunc
        return f"RatFunc({format_ratfunc(self)!r}, q={self.F.q})"

    def __str__(self) -> str:
        from .textfmt import format_ratfunc
        return format_ratfunc(self)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            if self.den.deg == 0:
                return RatFunc._raw(self.num + other.num, self.den)
            return RatFunc(self.num + other.num, self.den)
        if self.den.deg == 0:
            return RatFunc._raw(self.num * other.den + other.num, other.den)
        if other.den.deg == 0:
            return RatFunc._raw(self.num + other.num * self.den, self.den)
        g = gcd(self.den, other.den)
        if g.deg == 0:
            return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)
        b1, d1 = self.den // g, other.den // g
        return RatFunc(self.num * d1 + other.num * b1, self.den * d1)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return RatFunc(Poly(self.F))
        if self.den.deg == 0 and other.den.deg == 0:
            return RatFunc._raw(self.num * other.num, self.den)
        g1 = gcd(self.num, other.den)
        g2 = gcd(other.num, self.den)
        num = (self.num // g1) * (other.num // g2)
        den = (self.den // g2) * (other.den // g1)
        return RatFunc._raw(num, den) if den.lc == 1 else RatFunc(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in K")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc._raw(self.num ** n, self.den ** n)

    def frobenius(self) -> "RatFunc":
        return RatFunc._raw(self.num.frobenius(), self.den.frobenius())


def valuation(x, pi: Poly):
    """pi-adic valuation of x in K; +inf for x = 0."""
    x = x if isinstance(x, RatFunc) else RatFunc(x)
    if not x:
        return POS_INF
    return _poly_val(x.num, pi) - _poly_val(x.den, pi)


def _poly_val(a: Poly, pi: Poly) -> int:
    v = 0
    while True:
        qt, r = divmod(a, pi)
        if r:
            return v
        a, v = qt, v + 1


def valuation_infty(x):
    """v_infinity(x) = deg(den) - deg(num); +inf for x = 0."""
    x = x if isinstance(x, RatFunc) else RatFunc(x)
    if not x:
        return POS_INF
    return x.den.deg - x.num.deg
