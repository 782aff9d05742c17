"""The constant field F_q, q = p^e with p an odd prime.

Elements are plain ints in ``range(q)``.  For e = 1 the int is the residue
itself; for e > 1 the int ``sum(d_i * p**i)`` encodes the class of
``sum(d_i * X**i)`` in F_p[X]/(m), where m is the lexicographically least
monic irreducible of degree e.
"""

from __future__ import annotations

import functools
import itertools

import gmpy2


def is_prime(n: int) -> bool:
    return n >= 2 and bool(gmpy2.is_prime(n))


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


def binom_mod_p(m: int, n: int, p: int) -> int:
    """C(m, n) mod p by Lucas' theorem (digit-wise in base p)."""
    if n < 0 or m < 0 or n > m:
        return 0
    r = 1
    while n:
        mi, ni = m % p, n % p
        if ni > mi:
            return 0
        r = r * _small_binom(mi, ni, p) % p
        m //= p
        n //= p
    return r


@functools.lru_cache(maxsize=None)
def _small_binom(m: int, n: int, p: int) -> int:
    num = den = 1
    for i in range(n):
        num = num * (m - i) % p
        den = den * (i + 1) % p
    return num * pow(den, p - 2, p) % p


def digit_sum(n: int, base: int) -> int:
    """||n||_base, the sum of the base-``base`` digits of n."""
    s = 0
    while n:
        s += n % base
        n //= base
    return s


def _fp_poly_has_factor(coeffs: tuple[int, ...], p: int) -> bool:
    # brute force: divisible by some monic of degree 1..deg/2 (small e only)
    n = len(coeffs) - 1
    for k in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=k):
            div = tail + (1,)
            rem = list(coeffs)
            for i in range(n - k, -1, -1):
                c = rem[i + k]
                if c:
                    for j in range(k + 1):
                        rem[i + j] = (rem[i + j] - c * div[j]) % p
            if not any(rem[:k]):
                return True
    return False


class GF:
    """The finite field with q elements.

    Instances are interned per q, so ``GF(9) is GF(9)``.
    """

    _instances: dict[int, "GF"] = {}

    def __new__(cls, q: int):
        inst = cls._instances.get(q)
        if inst is not None:
            return inst
        p, e = prime_power(q)
        inst = super().__new__(cls)
        inst.q, inst.p, inst.e = q, p, e
        inst.modulus = None
        inst._add = inst._mul = inst._inv = None
        if e > 1:
            inst._build_tables()
        cls._instances[q] = inst
        return inst

    def __getnewargs__(self):
        return (self.q,)

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def _build_tables(self) -> None:
        p, e, q = self.p, self.e, self.q
        for tail in itertools.product(range(p), repeat=e):
            cand = tuple(reversed(tail)) + (1,)
            if not _fp_poly_has_factor(cand, p):
                self.modulus = cand
                break

        def digits(x):
            return [(x // p**i) % p for i in range(e)]

        def encode(ds):
            return sum(d * p**i for i, d in enumerate(ds))

        add = [[encode([(x + y) % p for x, y in zip(digits(a), digits(b))])
                for b in range(q)] for a in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            da = digits(a)
            for b in range(a, q):
                db = digits(b)
                prod = [0] * (2 * e - 1)
                for i, x in enumerate(da):
                    if x:
                        for j, y in enumerate(db):
                            prod[i + j] = (prod[i + j] + x * y) % p
                for i in range(2 * e - 2, e - 1, -1):
                    c = prod[i]
                    if c:
                        for j in range(e + 1):
                            prod[i - e + j] = (prod[i - e + j] - c * self.modulus[j]) % p
                mul[a][b] = mul[b][a] = encode(prod[:e])
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self._add, self._mul, self._inv = add, mul, inv
        self._neg = [add[a].index(0) for a in range(q)]

    # element arithmetic -------------------------------------------------

    def __call__(self, n: int) -> int:
        """Image of the integer n under Z -> F_q."""
        return n % self.p

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return self._add[a][b]

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in " + repr(self))
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self._inv[a]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        if self.e == 1:
            return pow(a, n, self.p)
        r = 1
        while n:
            if n & 1:
                r = self._mul[r][a]
            a = self._mul[a][a]
            n >>= 1
        return r

    def frobenius(self, a: int) -> int:
        """a -> a^p."""
        return a if self.e == 1 else self.pow(a, self.p)

    def elements(self) -> range:
        return range(self.q)

    def is_square(self, a: int) -> bool:
        return a == 0 or self.pow(a, (self.q - 1) // 2) == 1
