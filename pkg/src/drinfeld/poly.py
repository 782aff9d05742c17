"""Polynomials in A = F_q[T].

Coefficients are stored low degree first as a tuple of field ints with no
trailing zeros, so the zero polynomial is ``()``.  Over prime fields large
products go through Kronecker substitution: coefficient vectors are packed
into one integer, multiplied by GMP and unpacked with numpy.
"""

from __future__ import annotations

import functools
import itertools
import math

import gmpy2
import numpy as np

from .field import GF

NEG_INF = -math.inf

_KRON_MIN = 8


def _trim(c: list[int]) -> tuple[int, ...]:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def _dtype_for(bound: int):
    if bound < 2**32:
        return np.uint32, 4
    if bound < 2**64:
        return np.uint64, 8
    return None, None


def kron_pack(rows, stride: int, dtype) -> int:
    """Pack a list of coefficient tuples into one integer, ``stride`` slots per row."""
    arr = np.zeros(max(len(rows), 1) * stride, dtype=dtype)
    for i, r in enumerate(rows):
        if r:
            arr[i * stride:i * stride + len(r)] = r
    return int.from_bytes(arr.tobytes(), "little")


def kron_unpack(value: int, nslots: int, dtype, width: int, p: int) -> np.ndarray:
    raw = value.to_bytes(nslots * width, "little")
    return np.frombuffer(raw, dtype=dtype) % p


def _mul_school(a, b, F: GF):
    if F.e == 1:
        p = F.p
        r = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    r[i + j] += x * y
        return _trim([v % p for v in r])
    add, mul = F._add, F._mul
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            mx = mul[x]
            for j, y in enumerate(b):
                if y:
                    r[i + j] = add[r[i + j]][mx[y]]
    return _trim(r)


def mul_coeffs(a: tuple, b: tuple, F: GF) -> tuple:
    if not a or not b:
        return ()
    if F.e > 1 or min(len(a), len(b)) < _KRON_MIN:
        return _mul_school(a, b, F)
    p = F.p
    dtype, width = _dtype_for(min(len(a), len(b)) * (p - 1) ** 2)
    if dtype is None:
        return _mul_school(a, b, F)
    n = len(a) + len(b) - 1
    prod = gmpy2.mpz(kron_pack([a], len(a), dtype)) * gmpy2.mpz(kron_pack([b], len(b), dtype))
    return _trim(kron_unpack(int(prod), n, dtype, width, p).tolist())


def _add_coeffs(a, b, F: GF):
    if len(a) < len(b):
        a, b = b, a
    if F.e == 1:
        p = F.p
        r = [(x + y) % p for x, y in zip(a, b)]
    else:
        add = F._add
        r = [add[x][y] for x, y in zip(a, b)]
    r.extend(a[len(b):])
    return _trim(r)


def _neg_coeffs(a, F: GF):
    if F.e == 1:
        p = F.p
        return tuple(-x % p for x in a)
    return tuple(F._neg[x] for x in a)


def _divmod_coeffs(a, b, F: GF):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) - 1 < db:
        return (), a
    r = list(a)
    qt = [0] * (len(a) - db)
    inv = F.inv(b[-1])
    if F.e == 1:
        p = F.p
        for i in range(len(a) - 1 - db, -1, -1):
            c = r[i + db] * inv % p
            if c:
                qt[i] = c
                for j in range(db):
                    r[i + j] = (r[i + j] - c * b[j]) % p
                r[i + db] = 0
    else:
        add, mul, neg = F._add, F._mul, F._neg
        for i in range(len(a) - 1 - db, -1, -1):
            c = mul[r[i + db]][inv]
            if c:
                qt[i] = c
                nc = neg[c]
                for j in range(db):
                    r[i + j] = add[r[i + j]][mul[nc][b[j]]]
                r[i + db] = 0
    return _trim(qt), _trim(r[:db])


class Poly:
    """An element of F_q[T]."""

    __slots__ = ("F", "c")

    def __init__(self, F: GF, coeffs=()):
        self.F = F
        mod = F.p if F.e == 1 else F.q
        self.c = _trim([x % mod for x in coeffs])

    @classmethod
    def _raw(cls, F: GF, c: tuple) -> "Poly":
        # c must already be reduced and trimmed
        obj = object.__new__(cls)
        obj.F = F
        obj.c = c
        return obj

    @classmethod
    def T(cls, F: GF) -> "Poly":
        return cls(F, (0, 1))

    @classmethod
    def const(cls, F: GF, a: int) -> "Poly":
        return cls(F, (a,) if a else ())

    @classmethod
    def monomial(cls, F: GF, n: int, a: int = 1) -> "Poly":
        return cls(F, (0,) * n + (a,)) if a else cls(F)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.F is not self.F:
                raise ValueError(f"field mismatch: {self.F} vs {other.F}")
            return other
        if isinstance(other, int):
            return Poly.const(self.F, self.F(other))
        return NotImplemented

    @property
    def deg(self):
        return len(self.c) - 1 if self.c else NEG_INF

    @property
    def lc(self) -> int:
        return self.c[-1] if self.c else 0

    def __bool__(self) -> bool:
        return bool(self.c)

    def __len__(self) -> int:
        return len(self.c)

    def __getitem__(self, i: int) -> int:
        return self.c[i] if 0 <= i < len(self.c) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.c == Poly.const(self.F, self.F(other)).c
        return isinstance(other, Poly) and other.F is self.F and other.c == self.c

    def __hash__(self) -> int:
        return hash((self.F.q, self.c))

    def __repr__(self) -> str:
        from .textfmt import format_poly
        return f"Poly({format_poly(self)!r}, q={self.F.q})"

    def __str__(self) -> str:
        from .textfmt import format_poly
        return format_poly(self)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.F, _add_coeffs(self.c, other.c, self.F))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.F, _neg_coeffs(self.c, self.F))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.F, _add_coeffs(self.c, _neg_coeffs(other.c, self.F), self.F))

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.F, mul_coeffs(self.c, other.c, self.F))

    __rmul__ = __mul__

    def scale(self, a: int) -> "Poly":
        """Multiply by the field element a."""
        if not a:
            return Poly(self.F)
        F = self.F
        if F.e == 1:
            return Poly._raw(F, tuple(x * a % F.p for x in self.c))
        return Poly._raw(F, tuple(F._mul[a][x] for x in self.c))

    def __divmod__(self, other):
        other = self._coerce(other)
        qt, r = _divmod_coeffs(self.c, other.c, self.F)
        return Poly._raw(self.F, qt), Poly._raw(self.F, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        qt, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return qt

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self.F, 1)
        base = self
        # Frobenius shortcut on base-p digits
        p = self.F.p
        while n:
            d = n % p
            if d:
                result = result * _small_pow(base, d)
            n //= p
            if n:
                base = base.frobenius()
        return result

    def frobenius(self) -> "Poly":
        """self**p, computed as (sum c_i^p T^(ip))."""
        F = self.F
        if not self.c:
            return self
        p = F.p
        out = [0] * ((len(self.c) - 1) * p + 1)
        for i, x in enumerate(self.c):
            out[i * p] = F.frobenius(x)
        return Poly(F, tuple(out))

    def monic(self) -> "Poly":
        if not self.c:
            return self
        return self.scale(self.F.inv(self.c[-1]))

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def __call__(self, x: int) -> int:
        F = self.F
        r = 0
        for a in reversed(self.c):
            r = F.add(F.mul(r, x), a)
        return r

    def powmod(self, n: int, m: "Poly") -> "Poly":
        result = Poly.const(self.F, 1) % m
        base = self % m
        while n:
            if n & 1:
                result = (result * base) % m
            base = (base * base) % m
            n >>= 1
        return result

    def shift(self, n: int) -> "Poly":
        """Multiply by T^n."""
        return Poly._raw(self.F, (0,) * n + self.c) if self.c else self


def _small_pow(f: Poly, d: int) -> Poly:
    r = f
    for _ in range(d - 1):
        r = r * f
    return r


def _gcd_fp(a: list, b: list, p: int) -> tuple:
    """Euclid on coefficient lists over F_p, without intermediate Poly objects."""
    while b:
        db = len(b) - 1
        inv = pow(b[-1], p - 2, p)
        # a <- a mod b, in place
        while len(a) - 1 >= db:
            c = a[-1] * inv % p
            if c:
                off = len(a) - 1 - db
                for j in range(db):
                    a[off + j] = (a[off + j] - c * b[j]) % p
            a.pop()
            while a and not a[-1]:
                a.pop()
        a, b = b, a
    if not a:
        return ()
    inv = pow(a[-1], p - 2, p)
    return tuple(x * inv % p for x in a)


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    F = a.F
    if F.e == 1:
        return Poly._raw(F, _gcd_fp(list(a.c), list(b.c), F.p))
    while b:
        a, b = b, a % b
    return a.monic()


def xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with g = s*a + t*b monic."""
    F = a.F
    r0, r1 = a, b
    s0, s1 = Poly.const(F, 1), Poly(F)
    t0, t1 = Poly(F), Poly.const(F, 1)
    while r1:
        qt, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    if not r0:
        return r0, s0, t0
    inv = F.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _frobenius_power(f: Poly, k: int) -> Poly:
    """T^(q^k) mod f."""
    F = f.F
    x = Poly.T(F) % f
    for _ in range(k):
        x = x.powmod(F.q, f)
    return x


def is_irreducible(f: Poly) -> bool:
    """Rabin's test over F_q."""
    if not f:
        raise ValueError("the zero polynomial is not a valid input")
    n = f.deg
    if n <= 0:
        return False
    if n == 1:
        return True
    F = f.F
    T = Poly.T(F)
    if _frobenius_power(f, n) != T % f:
        return False
    for r in _prime_factors(n):
        h = _frobenius_power(f, n // r) - T
        if gcd(f, h).deg > 0:
            return False
    return True


def monics(F: GF, d: int):
    """All monic polynomials of degree d, in lexicographic coefficient order.

    The order compares (c_{d-1}, ..., c_0) lexicographically.
    """
    for tail in itertools.product(range(F.q), repeat=d):
        yield Poly(F, tuple(reversed(tail)) + (1,))


def monic_irreducibles(F: GF, d: int) -> list[Poly]:
    return [f for f in monics(F, d) if is_irreducible(f)]


def bracket(F: GF, i: int) -> Poly:
    """[i] = T^(q^i) - T."""
    if i < 1:
        raise ValueError("bracket [i] needs i >= 1")
    return Poly.monomial(F, F.q**i) - Poly.T(F)


@functools.lru_cache(maxsize=None)
def d_factorial(F: GF, i: int) -> Poly:
    """d_i = [1]^(q^(i-1)) ... [i-1]^q [i], the product of all monics of degree i."""
    if i < 0:
        raise ValueError("d_i needs i >= 0")
    r = Poly.const(F, 1)
    for j in range(1, i + 1):
        r = r * bracket(F, j) ** (F.q ** (i - j))
    return r


def distinct_degree_split(f: Poly, max_degree: int) -> Poly:
    """Strip from f every irreducible factor of degree <= max_degree; return the rest."""
    F = f.F
    rest = f.monic()
    for i in range(1, max_degree + 1):
        if rest.deg <= 0:
            break
        while rest.deg > 0:
            g = gcd(rest, _frobenius_power(rest, i) - Poly.T(F))
            if g.deg <= 0:
                break
            rest = rest // g
    return rest
