"""Dense polynomials in x over K, A/(pi) or F_{q^2d} (companion and supersingular polynomials)."""

from __future__ import annotations

import math


def _char(z) -> int:
    if hasattr(z, "ctx"):
        return z.ctx.F.p
    return z.F.p


class UPoly:
    """sum_m coeffs[m] x^m; coefficients are field objects with arithmetic operators."""

    __slots__ = ("coeffs", "zero_elem")

    def __init__(self, coeffs, zero):
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)
        self.zero_elem = zero

    @classmethod
    def x(cls, zero, one) -> "UPoly":
        return cls([zero, one], zero)

    @property
    def char(self) -> int:
        return _char(self.zero_elem)

    @property
    def deg(self):
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.zero_elem

    def one(self):
        return self.zero_elem + 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, m: int):
        return self.coeffs[m] if 0 <= m < len(self.coeffs) else self.zero_elem

    def __eq__(self, other) -> bool:
        if not isinstance(other, UPoly):
            other = UPoly([self.zero_elem + other], self.zero_elem)
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def __repr__(self) -> str:
        return f"UPoly({self})"

    def __str__(self) -> str:
        from .textfmt import format_upoly
        return format_upoly(self)

    def _lift(self, other) -> "UPoly":
        return other if isinstance(other, UPoly) else UPoly([self.zero_elem + other], self.zero_elem)

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly([self[i] + other[i] for i in range(n)], self.zero_elem)

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-c for c in self.coeffs], self.zero_elem)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if not self.coeffs or not other.coeffs:
            return UPoly([], self.zero_elem)
        out = [self.zero_elem] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return UPoly(out, self.zero_elem)

    __rmul__ = __mul__

    def scale(self, c) -> "UPoly":
        return UPoly([a * c for a in self.coeffs], self.zero_elem)

    def __pow__(self, n: int):
        result = UPoly([self.one()], self.zero_elem)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.coeffs)
        db = len(other.coeffs) - 1
        if len(r) - 1 < db:
            return UPoly([], self.zero_elem), self
        inv = other.lc.inverse()
        qt = [self.zero_elem] * (len(r) - db)
        for i in range(len(r) - 1 - db, -1, -1):
            c = r[i + db] * inv
            if c:
                qt[i] = c
                for j in range(db + 1):
                    r[i + j] = r[i + j] - c * other.coeffs[j]
        return UPoly(qt, self.zero_elem), UPoly(r[:db], self.zero_elem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "UPoly":
        return self.scale(self.lc.inverse()) if self.coeffs else self

    def __call__(self, x):
        r = self.zero_elem
        for c in reversed(self.coeffs):
            r = r * x + c
        return r

    def map(self, fn, zero) -> "UPoly":
        """Apply a ring map to every coefficient."""
        return UPoly([fn(c) for c in self.coeffs], zero)

    def shift(self, n: int) -> "UPoly":
        """Multiply by x^n."""
        return UPoly([self.zero_elem] * n + list(self.coeffs), self.zero_elem) if self else self
