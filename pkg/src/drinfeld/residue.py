"""Residue fields A/(pi), the prime context, and the quadratic extension F_{q^{2d}}."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .field import GF
from .poly import Poly, is_irreducible, xgcd
from .ratfunc import RatFunc, valuation


class NonIntegralError(ArithmeticError):
    """A coefficient has negative pi-adic valuation."""


class ResidueElem:
    """An element of A/(pi), stored as its remainder mod pi."""

    __slots__ = ("ctx", "v")

    def __init__(self, ctx: "PrimeContext", v: Poly):
        self.ctx = ctx
        self.v = v % ctx.pi if v.deg >= ctx.d else v

    def _coerce(self, other):
        if isinstance(other, ResidueElem):
            return other
        if isinstance(other, (int, Poly, RatFunc)):
            return self.ctx.reduce(other)
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.v)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        return other is not NotImplemented and self.v == other.v

    def __hash__(self) -> int:
        return hash(self.v)

    def __repr__(self) -> str:
        return f"ResidueElem({self.v}, pi={self.ctx.pi})"

    def __str__(self) -> str:
        return str(self.v)

    def __add__(self, other):
        other = self._coerce(other)
        return ResidueElem(self.ctx, self.v + other.v)

    __radd__ = __add__

    def __neg__(self):
        return ResidueElem(self.ctx, -self.v)

    def __sub__(self, other):
        other = self._coerce(other)
        return ResidueElem(self.ctx, self.v - other.v)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        return ResidueElem(self.ctx, self.v * other.v)

    __rmul__ = __mul__

    def inverse(self) -> "ResidueElem":
        if not self.v:
            raise ZeroDivisionError("inverse of zero in A/(pi)")
        g, s, _ = xgcd(self.v, self.ctx.pi)
        return ResidueElem(self.ctx, s)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return ResidueElem(self.ctx, self.v.powmod(n, self.ctx.pi))


@dataclass(frozen=True, eq=False)
class PrimeContext:
    """A monic irreducible pi of degree d over F_q, q odd."""

    pi: Poly
    d: int = field(init=False)
    genus: int = field(init=False)
    gamma0: int = field(init=False)

    def __post_init__(self):
        F = self.pi.F
        if F.p == 2:
            raise ValueError("q must be odd")
        if not self.pi.is_monic() or not is_irreducible(self.pi):
            raise ValueError(f"{self.pi} is not a monic irreducible polynomial")
        d = self.pi.deg
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "genus", genus(F.q, d))
        object.__setattr__(self, "gamma0", d % 2)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeContext) and self.pi == other.pi

    def __hash__(self) -> int:
        return hash(self.pi)

    @property
    def F(self) -> GF:
        return self.pi.F

    @property
    def q(self) -> int:
        return self.pi.F.q

    @property
    def size(self) -> int:
        return self.q**self.d

    def __repr__(self) -> str:
        return f"PrimeContext(pi={self.pi}, q={self.q})"

    def reduce(self, x) -> ResidueElem:
        """Reduction map A_(pi) -> A/(pi)."""
        if isinstance(x, ResidueElem):
            return x
        if isinstance(x, int):
            return ResidueElem(self, Poly.const(self.F, self.F(x)))
        if isinstance(x, Poly):
            return ResidueElem(self, x)
        if x.den.deg == 0:
            return ResidueElem(self, x.num)
        if valuation(x, self.pi) < 0:
            raise NonIntegralError(f"{x} is not {self.pi}-integral")
        return ResidueElem(self, x.num) * ResidueElem(self, x.den).inverse()

    def zero(self) -> ResidueElem:
        return ResidueElem(self, Poly(self.F))

    def one(self) -> ResidueElem:
        return ResidueElem(self, Poly.const(self.F, 1))

    def elements(self):
        from .poly import monics
        yield self.zero()
        for k in range(self.d):
            for m in monics(self.F, k):
                for c in range(1, self.q):
                    yield ResidueElem(self, m.scale(c))

    @functools.cached_property
    def nonresidue(self) -> ResidueElem:
        """Least non-square of A/(pi) in enumeration order."""
        e = (self.size - 1) // 2
        for x in self.elements():
            if x and (x ** e) != self.one():
                return x
        raise AssertionError("no non-residue found")


def genus(q: int, d: int) -> int:
    """Genus of X_0(p) for deg p = d."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if d % 2:
        return (q**d - q) // (q * q - 1)
    return (q**d - q * q) // (q * q - 1)


class QuadElem:
    """a + b*s in A/(pi)(s), s^2 = nonresidue; a model of F_{q^{2d}}."""

    __slots__ = ("a", "b")

    def __init__(self, a: ResidueElem, b: ResidueElem | None = None):
        self.a = a
        self.b = b if b is not None else a.ctx.zero()

    @property
    def ctx(self) -> PrimeContext:
        return self.a.ctx

    def _coerce(self, other):
        if isinstance(other, QuadElem):
            return other
        if isinstance(other, (int, Poly, RatFunc, ResidueElem)):
            return QuadElem(self.ctx.reduce(other))
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        return other is not NotImplemented and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __repr__(self) -> str:
        return f"QuadElem({self.a} + ({self.b})*s)"

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        return f"({self.a}) + ({self.b})*s"

    def __add__(self, other):
        other = self._coerce(other)
        return QuadElem(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        return QuadElem(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        n = self.ctx.nonresidue
        return QuadElem(self.a * other.a + n * self.b * other.b,
                        self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def inverse(self) -> "QuadElem":
        if not self:
            raise ZeroDivisionError("inverse of zero in F_{q^2d}")
        norm = self.a * self.a - self.ctx.nonresidue * self.b * self.b
        ninv = norm.inverse()
        return QuadElem(self.a * ninv, -self.b * ninv)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadElem(self.ctx.one())
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def in_base(self) -> bool:
        return not self.b


def quad_elements(ctx: PrimeContext):
    """Every element of F_{q^{2d}} = A/(pi)(s)."""
    base = list(ctx.elements())
    for b in base:
        for a in base:
            yield QuadElem(a, b)
