"""Truncated power series in the parameter u, and the hyperderivatives D_n.

A series over K is stored as numerator polynomials over one monic common
denominator; a series over A/(pi) stores reduced remainders and a trivial
denominator.  Multiplication of whole series goes through a single
Kronecker-packed integer product when the constant field is prime.
"""

from __future__ import annotations

import functools

import gmpy2

from .field import GF, binom_mod_p, digit_sum
from .poly import Poly, _dtype_for, d_factorial, gcd, kron_pack, kron_unpack, mul_coeffs, _trim
from .ratfunc import POS_INF, RatFunc, _poly_val
from .residue import PrimeContext, ResidueElem


class PrecisionError(ValueError):
    """A computation needs more u-adic precision than its input carries."""


class DomainError(TypeError):
    """Series over K and over A/(pi) were mixed."""


def _lcm(a: Poly, b: Poly) -> Poly:
    if a == b:
        return a
    return (a // gcd(a, b)) * b


def _conv_rows(a_rows, b_rows, nout: int, F: GF):
    """Truncated convolution of two sequences of coefficient tuples."""
    a_rows, b_rows = a_rows[:nout], b_rows[:nout]
    la = max((len(r) for r in a_rows), default=0)
    lb = max((len(r) for r in b_rows), default=0)
    if not la or not lb or not nout:
        return [()] * nout
    dense = F.e == 1 and la + lb >= 4 and len(a_rows) * len(b_rows) > 16
    if dense:
        p = F.p
        stride = la + lb - 1
        dtype, width = _dtype_for(min(len(a_rows), len(b_rows)) * min(la, lb) * (p - 1) ** 2)
        if dtype is not None:
            A = gmpy2.mpz(kron_pack(a_rows, stride, dtype))
            B = gmpy2.mpz(kron_pack(b_rows, stride, dtype))
            nslots = (len(a_rows) + len(b_rows) - 1) * stride
            arr = kron_unpack(int(A * B), nslots, dtype, width, p).reshape(-1, stride)[:nout]
            out = [_trim(row) for row in arr.tolist()]
            out.extend([()] * (nout - len(out)))
            return out
    out = [Poly(F)] * nout
    for i, x in enumerate(a_rows):
        if not x:
            continue
        for j in range(min(len(b_rows), nout - i)):
            y = b_rows[j]
            if y:
                out[i + j] = out[i + j] + Poly._raw(F, mul_coeffs(x, y, F))
    return [c.c for c in out]


class USeries:
    """sum_{i<prec} c_i u^i + O(u^prec) with c_i in K or in A/(pi).

    Equality compares coefficients below the smaller of the two precisions.
    """

    __slots__ = ("F", "nums", "den", "prec", "ctx")

    def __init__(self, F: GF, nums, den: Poly | None = None, prec: int | None = None,
                 ctx: PrimeContext | None = None, _normalize: bool = True):
        nums = list(nums)
        if prec is None:
            prec = len(nums)
        if prec < 0:
            raise ValueError("negative precision")
        nums = nums[:prec]
        zero = Poly(F)
        nums.extend([zero] * (prec - len(nums)))
        self.F, self.prec, self.ctx = F, prec, ctx
        if den is None:
            den = Poly.const(F, 1)
        if ctx is not None:
            pi = ctx.pi
            nums = [n % pi if n.deg >= ctx.d else n for n in nums]
            if den.deg != 0 or den.lc != 1:
                inv = ctx.reduce(den).inverse().v
                nums = [(n * inv) % pi for n in nums]
                den = Poly.const(F, 1)
        elif _normalize:
            nums, den = _normalize_frac(nums, den)
        self.nums, self.den = tuple(nums), den

    # construction -------------------------------------------------------

    @classmethod
    def from_coeffs(cls, F: GF, coeffs, prec: int | None = None,
                    ctx: PrimeContext | None = None) -> "USeries":
        coeffs = list(coeffs)
        if prec is None:
            prec = len(coeffs)
        coeffs = coeffs[:prec]
        if ctx is not None:
            nums = [ctx.reduce(c).v for c in coeffs]
            return cls(F, nums, None, prec, ctx)
        fr = [_as_ratfunc(F, c) for c in coeffs]
        den = Poly.const(F, 1)
        for c in fr:
            if c.den.deg > 0:
                den = _lcm(den, c.den)
        nums = [c.num if c.den == den else c.num * (den // c.den) for c in fr]
        return cls(F, nums, den, prec)

    @classmethod
    def zero(cls, F: GF, prec: int, ctx: PrimeContext | None = None) -> "USeries":
        return cls(F, [], None, prec, ctx)

    @classmethod
    def one(cls, F: GF, prec: int, ctx: PrimeContext | None = None) -> "USeries":
        return cls.monomial(F, 0, prec, ctx=ctx)

    @classmethod
    def monomial(cls, F: GF, i: int, prec: int, c=1, ctx: PrimeContext | None = None) -> "USeries":
        coeffs = [0] * min(i, prec) + ([c] if i < prec else [])
        return cls.from_coeffs(F, coeffs, prec, ctx)

    # access -------------------------------------------------------------

    @property
    def domain(self) -> str:
        return "K" if self.ctx is None else f"A/({self.ctx.pi})"

    def coeff(self, i: int):
        if not 0 <= i < self.prec:
            raise PrecisionError(f"coefficient {i} beyond precision {self.prec}")
        if self.ctx is not None:
            return ResidueElem(self.ctx, self.nums[i])
        n = self.nums[i]
        if self.den.deg == 0:
            return RatFunc._raw(n, self.den)
        return RatFunc(n, self.den)

    def coeffs(self) -> list:
        return [self.coeff(i) for i in range(self.prec)]

    def __len__(self) -> int:
        return self.prec

    def order(self):
        """Least i < prec with c_i != 0, or +inf."""
        for i, n in enumerate(self.nums):
            if n:
                return i
        return POS_INF

    def is_zero(self) -> bool:
        return not any(self.nums)

    def normalized(self) -> "USeries":
        """Same series with the common denominator reduced against every numerator."""
        if self.den.deg == 0 or self.ctx is not None:
            return self
        return USeries(self.F, self.nums, self.den, self.prec)

    def has_integral_coeffs(self) -> bool:
        """All coefficients lie in A."""
        return self.normalized().den.deg == 0

    def __repr__(self) -> str:
        return f"USeries({self}, q={self.F.q}, domain={self.domain})"

    def __str__(self) -> str:
        from .textfmt import format_series
        return format_series(self)

    # arithmetic ---------------------------------------------------------

    def _check(self, other: "USeries") -> None:
        if other.F is not self.F:
            raise DomainError(f"constant fields differ: {self.F} vs {other.F}")
        if other.ctx != self.ctx:
            raise DomainError(f"coefficient domains differ: {self.domain} vs {other.domain}")

    def _lift(self, other):
        if isinstance(other, USeries):
            self._check(other)
            return other
        if isinstance(other, (int, Poly, RatFunc, ResidueElem)):
            return USeries.from_coeffs(self.F, [other], self.prec, self.ctx)
        return NotImplemented

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is NotImplemented:
            return False
        n = min(self.prec, other.prec)
        if self.den == other.den:
            return self.nums[:n] == other.nums[:n]
        return all(a * other.den == b * self.den
                   for a, b in zip(self.nums[:n], other.nums[:n]))

    __hash__ = None

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = min(self.prec, other.prec)
        if self.den == other.den:
            nums = [a + b for a, b in zip(self.nums[:n], other.nums[:n])]
            return USeries(self.F, nums, self.den, n, self.ctx, _normalize=False)
        # sums never grow the denominator past the lcm, so cancellation is left
        # to the next product (or to normalized())
        L = _lcm(self.den, other.den)
        m1, m2 = L // self.den, L // other.den
        nums = [a * m1 + b * m2 for a, b in zip(self.nums[:n], other.nums[:n])]
        return USeries(self.F, nums, L, n, self.ctx, _normalize=False)

    __radd__ = __add__

    def __neg__(self):
        return USeries(self.F, [-a for a in self.nums], self.den, self.prec, self.ctx,
                       _normalize=False)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        if isinstance(other, (int, Poly, RatFunc, ResidueElem)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.order(), other.order()
        a = self.prec if a == POS_INF else a
        b = other.prec if b == POS_INF else b
        n = min(self.prec + b, other.prec + a)
        rows = _conv_rows([x.c for x in self.nums], [y.c for y in other.nums], n, self.F)
        nums = [Poly._raw(self.F, r) for r in rows]
        return USeries(self.F, nums, self.den * other.den, n, self.ctx,
                       _normalize=(self.den.deg > 0 or other.den.deg > 0))

    __rmul__ = __mul__

    def scale(self, c) -> "USeries":
        """Multiply by a constant from K (or A/(pi))."""
        if self.ctx is not None:
            c = self.ctx.reduce(c)
            return USeries(self.F, [a * c.v for a in self.nums], None, self.prec, self.ctx)
        c = _as_ratfunc(self.F, c)
        if not c:
            return USeries.zero(self.F, self.prec)
        # a polynomial factor cannot add a denominator, so any cancellation is left lazy
        return USeries(self.F, [a * c.num for a in self.nums], self.den * c.den, self.prec,
                       _normalize=c.den.deg > 0)

    def scale_int(self, n: int) -> "USeries":
        return self.scale(self.F(n))

    def shift(self, r: int) -> "USeries":
        """Multiply by u^r."""
        zero = Poly(self.F)
        return USeries(self.F, [zero] * r + list(self.nums), self.den, self.prec + r, self.ctx,
                       _normalize=False)

    def truncate(self, n: int) -> "USeries":
        if n > self.prec:
            raise PrecisionError(f"cannot raise precision {self.prec} to {n}")
        return USeries(self.F, self.nums[:n], self.den, n, self.ctx,
                       _normalize=self.den.deg > 0)

    def scale_variable(self, c) -> "USeries":
        """f(u) -> f(c*u) for a constant c."""
        c = _as_ratfunc(self.F, c) if self.ctx is None else self.ctx.reduce(c)
        power = RatFunc.from_int(self.F, 1) if self.ctx is None else self.ctx.one()
        coeffs = []
        for i in range(self.prec):
            coeffs.append(self.coeff(i) * power)
            power = power * c
        return USeries.from_coeffs(self.F, coeffs, self.prec, self.ctx)

    def frobenius(self) -> "USeries":
        """self**p; precision multiplies by p."""
        F, p = self.F, self.F.p
        zero = Poly(F)
        nums = [zero] * (self.prec * p)
        for i, a in enumerate(self.nums):
            if a:
                nums[i * p] = a.frobenius()
        if self.ctx is not None:
            return USeries(F, nums, None, self.prec * p, self.ctx)
        return USeries(F, nums, self.den.frobenius(), self.prec * p, _normalize=False)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        p = self.F.p
        result = None
        base = self
        while n:
            d = n % p
            if d:
                term = base
                for _ in range(d - 1):
                    term = term * base
                result = term if result is None else result * term
            n //= p
            if n:
                base = base.frobenius()
        if result is None:
            return USeries.one(self.F, self.prec, self.ctx)
        return result

    def inverse(self) -> "USeries":
        """Inverse of a unit series (c_0 != 0) by Newton iteration."""
        if not self.prec:
            raise PrecisionError("cannot invert a series with precision 0")
        c0 = self.coeff(0)
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not a unit")
        x = USeries.from_coeffs(self.F, [c0.inverse()], 1, self.ctx)
        m = 1
        while m < self.prec:
            m = min(2 * m, self.prec)
            # treat the current approximation as a polynomial
            x = USeries(self.F, x.nums, x.den, m, self.ctx, _normalize=False)
            err = USeries.one(self.F, m, self.ctx) - self.truncate(m) * x
            x = (x + x * err).truncate(m)
        return x

    def __truediv__(self, other):
        if isinstance(other, (int, Poly, RatFunc, ResidueElem)):
            if self.ctx is None:
                return self.scale(_as_ratfunc(self.F, other).inverse())
            return self.scale(self.ctx.reduce(other).inverse())
        return self * other.inverse()

    # valuations and reduction ------------------------------------------

    def valuation(self, ctx: PrimeContext):
        """inf_i v_p(c_i) over stored coefficients (+inf for the zero series)."""
        if self.ctx is not None:
            raise DomainError("valuation needs K coefficients")
        vals = [_poly_val(a, ctx.pi) for a in self.nums if a]
        if not vals:
            return POS_INF
        return min(vals) - _poly_val(self.den, ctx.pi)

    def congruent(self, other: "USeries", ctx: PrimeContext, m: int = 1) -> bool:
        """self = other (mod p^m) on the stored coefficients."""
        return (self - other).valuation(ctx) >= m

    def reduce(self, ctx: PrimeContext) -> "USeries":
        """Coefficient-wise reduction to A/(pi); raises NonIntegralError if impossible."""
        if self.ctx is not None:
            if self.ctx != ctx:
                raise DomainError("series already lives over another residue field")
            return self
        return USeries(self.F, [ctx.reduce(self.coeff(i)).v for i in range(self.prec)],
                       None, self.prec, ctx)

    def hyperderivative(self, n: int) -> "USeries":
        return hyperderivative(self, n)


def _as_ratfunc(F: GF, c) -> RatFunc:
    if isinstance(c, RatFunc):
        return c
    if isinstance(c, Poly):
        return RatFunc(c)
    if isinstance(c, int):
        return RatFunc.from_int(F, c)
    raise TypeError(f"cannot use {c!r} as an element of K")


def _normalize_frac(nums, den: Poly):
    if den.deg > 0:
        g = den
        for a in nums:
            if a:
                g = gcd(g, a)
                if g.deg == 0:
                    break
        if g.deg > 0:
            nums = [a // g for a in nums]
            den = den // g
    if den.lc != 1:
        inv = den.F.inv(den.lc)
        nums = [a.scale(inv) for a in nums]
        den = den.scale(inv)
    if not any(nums):
        den = Poly.const(den.F, 1)
    return nums, den


# hyperderivatives -----------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _alpha_table(F: GF, n: int) -> tuple:
    """(alpha(n, r) for r = 0..n); each row depends only on smaller n."""
    q = F.q
    one = RatFunc.from_int(F, 1)
    zero = RatFunc(Poly(F))
    if n == 0:
        return (one,)
    row = [zero] * (n + 1)
    m = 0
    while q**m <= n:
        prev = _alpha_table(F, n - q**m)
        inv_d = RatFunc(Poly.const(F, 1), d_factorial(F, m))
        for r in range(1, n + 1):
            if r - 1 < len(prev) and prev[r - 1]:
                row[r] = row[r] + prev[r - 1] * inv_d
        m += 1
    return tuple(row)


def alpha_coeff(F: GF, n: int, r: int) -> RatFunc:
    """Sum over (n_1..n_r) with q^n_1 + ... + q^n_r = n of 1/(d_n_1 ... d_n_r)."""
    if n < 0 or r < 0:
        raise ValueError("alpha needs n, r >= 0")
    if r > n:
        return RatFunc(Poly(F)) if (n, r) != (0, 0) else RatFunc.from_int(F, 1)
    # fill the memo bottom-up so the recursion depth stays small
    for k in range(0, n + 1, max(1, n // 64)):
        _alpha_table(F, k)
    return _alpha_table(F, n)[r]


def alpha_nonzero(q: int, n: int, r: int) -> bool:
    """The vanishing criterion for alpha(n, r)."""
    s = digit_sum(n, q)
    return s <= r <= n and (r - s) % (q - 1) == 0


@functools.lru_cache(maxsize=None)
def _hyper_data(F: GF, n: int, rmax: int):
    """Admissible r, alpha(n, r), their common denominator L and the signed L * alpha."""
    p, q = F.p, F.q
    rs = [r for r in range(1, min(n, rmax) + 1) if alpha_nonzero(q, n, r)]
    alphas = [alpha_coeff(F, n, r) for r in rs]
    L = Poly.const(F, 1)
    for a in alphas:
        if a.den.deg > 0:
            L = _lcm(L, a.den)
    facs = [(a.num * (L // a.den)).scale(1 if (n + r) % 2 == 0 else p - 1)
            for a, r in zip(alphas, rs)]
    return rs, alphas, L, facs


def hyperderivative(f: USeries, n: int) -> USeries:
    """D_n f through the explicit u-expansion formula; output precision = input precision."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return f
    F, p = f.F, f.F.p
    N = f.prec
    rs, alphas, L, facs = _hyper_data(F, n, max(N - 1, 0))
    if f.ctx is not None:
        ctx = f.ctx
        facs = [ctx.reduce(a).v.scale(1 if (n + r) % 2 == 0 else p - 1)
                for a, r in zip(alphas, rs)]
        L = Poly.const(F, 1)
    zero = Poly(F)
    out = [zero] * N
    for i in range(2, N):
        acc = zero
        for r, fac in zip(rs, facs):
            if r > i - 1:
                break
            a = f.nums[i - r]
            if not a or not fac:
                continue
            c = binom_mod_p(i - 1, r, p)
            if c:
                acc = acc + (fac * a).scale(c)
        out[i] = acc
    if f.ctx is not None:
        return USeries(F, out, None, N, f.ctx)
    # cancellation is left to normalized(); equality does not need it
    return USeries(F, out, f.den * L, N, _normalize=False)


def hasse_poly(P, n: int):
    """n-th Hasse derivative of a polynomial in one variable, in characteristic p.

    Accepts a ``Poly`` (coefficients in F_q) or a ``UPoly`` over any field.
    """
    from .upoly import UPoly
    if n < 0:
        raise ValueError("n must be >= 0")
    if isinstance(P, Poly):
        F = P.F
        out = [F.mul(F(binom_mod_p(m, n, F.p)), c) for m, c in enumerate(P.c) if m >= n]
        return Poly(F, out)
    if isinstance(P, UPoly):
        p = P.char
        out = [c * binom_mod_p(m, n, p) for m, c in enumerate(P.coeffs) if m >= n]
        return UPoly(out, P.zero_elem)
    raise TypeError("hasse_poly needs a Poly or UPoly")


def series_valuation(f: USeries, ctx: PrimeContext):
    return f.valuation(ctx)


def congruent(f: USeries, g: USeries, ctx: PrimeContext, m: int = 1) -> bool:
    return f.congruent(g, ctx, m)
