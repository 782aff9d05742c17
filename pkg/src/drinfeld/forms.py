"""Level-one Drinfeld modular forms as isobaric polynomials in g and h.

g has weight q-1 and type 0, h has weight q+1 and type 1, so a monomial
g^a h^b has weight a(q-1) + b(q+1) and type b mod q-1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import GF, binom_mod_p
from .poly import Poly
from .ratfunc import RatFunc
from .residue import PrimeContext, ResidueElem
from .upoly import UPoly


class WeightError(ValueError):
    """Weight or type bookkeeping violated."""


class MalformedFormError(ValueError):
    """A form does not fit the shape expected by an operation."""


def _coerce(F: GF, c, ctx):
    if ctx is not None:
        return ctx.reduce(c)
    if isinstance(c, RatFunc):
        return c
    if isinstance(c, Poly):
        return RatFunc(c)
    if isinstance(c, int):
        return RatFunc.from_int(F, c)
    raise TypeError(f"cannot use {c!r} as a coefficient")


def weight_of(q: int, a: int, b: int) -> int:
    return a * (q - 1) + b * (q + 1)


class IsobaricForm:
    """sum c_{a,b} g^a h^b, homogeneous of weight k and type l (mod q-1)."""

    __slots__ = ("F", "k", "l", "terms", "ctx")

    def __init__(self, F: GF, k: int, l: int, terms=None, ctx: PrimeContext | None = None):
        q = F.q
        self.F, self.k, self.l, self.ctx = F, k, l % (q - 1), ctx
        clean = {}
        for (a, b), c in (terms or {}).items():
            c = _coerce(F, c, ctx)
            if not c:
                continue
            if a < 0 or b < 0 or weight_of(q, a, b) != k or (b - l) % (q - 1):
                raise WeightError(f"g^{a}*h^{b} is not of weight {k} and type {l}")
            clean[(a, b)] = c
        self.terms = clean

    # construction -------------------------------------------------------

    @classmethod
    def from_terms(cls, F: GF, terms: dict, k: int | None = None, l: int | None = None,
                   ctx: PrimeContext | None = None) -> "IsobaricForm":
        """Infer (k, l) from the monomials when not given."""
        live = [ab for ab, c in terms.items() if c]
        if k is None or l is None:
            if not live:
                raise WeightError("cannot infer the weight of the zero form")
            a, b = live[0]
            k = weight_of(F.q, a, b) if k is None else k
            l = b if l is None else l
        return cls(F, k, l, terms, ctx)

    @classmethod
    def monomial(cls, F: GF, a: int, b: int, c=1, ctx: PrimeContext | None = None) -> "IsobaricForm":
        return cls(F, weight_of(F.q, a, b), b, {(a, b): c}, ctx)

    @classmethod
    def one(cls, F: GF, ctx: PrimeContext | None = None) -> "IsobaricForm":
        return cls.monomial(F, 0, 0, 1, ctx)

    @classmethod
    def zero(cls, F: GF, k: int, l: int, ctx: PrimeContext | None = None) -> "IsobaricForm":
        return cls(F, k, l, {}, ctx)

    # access -------------------------------------------------------------

    @property
    def q(self) -> int:
        return self.F.q

    def __bool__(self) -> bool:
        return bool(self.terms)

    def monomials(self) -> list[tuple[int, int]]:
        """Exponent pairs sorted by increasing b."""
        return sorted(self.terms, key=lambda ab: ab[1])

    def coeff(self, a: int, b: int):
        c = self.terms.get((a, b))
        if c is not None:
            return c
        return self.ctx.zero() if self.ctx is not None else RatFunc(Poly(self.F))

    def is_integral(self) -> bool:
        """All coefficients lie in A."""
        return self.ctx is not None or all(c.den.deg == 0 for c in self.terms.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, IsobaricForm):
            return NotImplemented
        if self.F is not other.F or self.ctx != other.ctx:
            return False
        if not self.terms and not other.terms:
            return True
        return (self.k, self.l) == (other.k, other.l) and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        return f"IsobaricForm({self}, k={self.k}, l={self.l}, q={self.q})"

    def __str__(self) -> str:
        from .textfmt import format_form
        return format_form(self)

    # arithmetic ---------------------------------------------------------

    def _same_space(self, other: "IsobaricForm") -> None:
        if other.F is not self.F or other.ctx != self.ctx:
            raise WeightError("forms live over different coefficient domains")
        if (self.k, self.l) != (other.k, other.l):
            raise WeightError(f"weight/type mismatch: ({self.k},{self.l}) vs ({other.k},{other.l})")

    def __add__(self, other):
        if not isinstance(other, IsobaricForm):
            return NotImplemented
        self._same_space(other)
        terms = dict(self.terms)
        for ab, c in other.terms.items():
            terms[ab] = terms[ab] + c if ab in terms else c
        return IsobaricForm(self.F, self.k, self.l, terms, self.ctx)

    def __neg__(self):
        return IsobaricForm(self.F, self.k, self.l, {ab: -c for ab, c in self.terms.items()}, self.ctx)

    def __sub__(self, other):
        if not isinstance(other, IsobaricForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, IsobaricForm):
            return self.scale(other)
        if other.F is not self.F or other.ctx != self.ctx:
            raise WeightError("forms live over different coefficient domains")
        terms = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                ab = (a1 + a2, b1 + b2)
                c = c1 * c2
                terms[ab] = terms[ab] + c if ab in terms else c
        return IsobaricForm(self.F, self.k + other.k, self.l + other.l, terms, self.ctx)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "IsobaricForm":
        c = _coerce(self.F, c, self.ctx)
        return IsobaricForm(self.F, self.k, self.l,
                            {ab: v * c for ab, v in self.terms.items()}, self.ctx)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a form")
        result = IsobaricForm.one(self.F, self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def reduce(self, ctx: PrimeContext) -> "IsobaricForm":
        """Coefficient-wise reduction mod pi (NonIntegralError if impossible)."""
        if self.ctx is not None:
            if self.ctx != ctx:
                raise WeightError("form already lives over another residue field")
            return self
        return IsobaricForm(self.F, self.k, self.l,
                            {ab: ctx.reduce(c) for ab, c in self.terms.items()}, ctx)

    def map_coeffs(self, fn) -> "IsobaricForm":
        return IsobaricForm(self.F, self.k, self.l,
                            {ab: fn(c) for ab, c in self.terms.items()}, self.ctx)


def g_form(F: GF) -> IsobaricForm:
    return IsobaricForm.monomial(F, 1, 0)


def h_form(F: GF) -> IsobaricForm:
    return IsobaricForm.monomial(F, 0, 1)


def delta_form(F: GF) -> IsobaricForm:
    """Delta = -h^{q-1}."""
    return IsobaricForm.monomial(F, 0, F.q - 1, -1)


# Serre operators ------------------------------------------------------------

def serre_del(f: IsobaricForm) -> IsobaricForm:
    """The derivation with del(g) = -h and del(h) = 0."""
    terms = {}
    for (a, b), c in f.terms.items():
        if a:
            terms[(a - 1, b + 1)] = c * (-a)
    return IsobaricForm(f.F, f.k + 2, f.l + 1, terms, f.ctx)


def serre_del_n(f: IsobaricForm, n: int) -> IsobaricForm:
    """del^n / n!, valid for 0 <= n < q."""
    q, p = f.q, f.F.p
    if not 0 <= n < q:
        raise ValueError(f"divided Serre operator needs 0 <= n < q, got n={n}")
    if n == 0:
        return f
    sign = -1 if n % 2 else 1
    terms = {}
    for (a, b), c in f.terms.items():
        if a >= n:
            coef = binom_mod_p(a, n, p)
            if coef:
                terms[(a - n, b + n)] = c * (sign * coef)
    return IsobaricForm(f.F, f.k + 2 * n, f.l + n, terms, f.ctx)


# weight/type decomposition and companion polynomials ----------------------

def mu_gamma(q: int, k: int, l: int) -> tuple[int, int]:
    """The unique (mu, gamma), 0 <= gamma <= q, mu = l mod q-1, k = mu(q+1) + gamma(q-1)."""
    if k < 0:
        raise ValueError("negative weight")
    for gamma in range(q + 1):
        rest = k - gamma * (q - 1)
        if rest % (q + 1) == 0:
            mu = rest // (q + 1)
            if (mu - l) % (q - 1) == 0:
                return mu, gamma
    raise WeightError(f"no form of weight {k} and type {l} exists for q={q}")


@dataclass(frozen=True)
class CompanionPoly:
    """P(f, x) with f = g^gamma h^mu P(f, j), j = g^{q+1} / (-h^{q-1})."""

    poly: UPoly
    mu: int
    gamma: int
    k: int
    l: int

    def __str__(self) -> str:
        return str(self.poly)


def _zero_coeff(F: GF, ctx):
    return ctx.zero() if ctx is not None else RatFunc(Poly(F))


def companion(f: IsobaricForm) -> CompanionPoly:
    q = f.q
    mu, gamma = mu_gamma(q, f.k, f.l)
    zero = _zero_coeff(f.F, f.ctx)
    coeffs = {}
    for (a, b), c in f.terms.items():
        m, r = divmod(a - gamma, q + 1)
        if r or m < 0 or b != mu - (q - 1) * m:
            raise MalformedFormError(f"g^{a}*h^{b} is off the companion progression")
        coeffs[m] = -c if m % 2 else c
    n = max(coeffs, default=-1) + 1
    poly = UPoly([coeffs.get(m, zero) for m in range(n)], zero)
    return CompanionPoly(poly, mu, gamma, f.k, f.l % (q - 1))


def from_companion(P, F: GF, k: int, l: int, ctx: PrimeContext | None = None) -> IsobaricForm:
    """Inverse of companion: rebuild f from P(f, x) and its weight/type."""
    poly = P.poly if isinstance(P, CompanionPoly) else P
    q = F.q
    mu, gamma = mu_gamma(q, k, l)
    terms = {}
    for m, c in enumerate(poly.coeffs):
        if not c:
            continue
        b = mu - (q - 1) * m
        if b < 0:
            raise MalformedFormError(f"x^{m} would need a negative power of h")
        terms[(gamma + (q + 1) * m, b)] = -c if m % 2 else c
    return IsobaricForm(F, k, l, terms, ctx)


# bases and determinants -----------------------------------------------------

def monomial_exponents(q: int, k: int, l: int) -> list[tuple[int, int]]:
    out = []
    for b in range(k // (q + 1) + 1):
        rest = k - b * (q + 1)
        if rest % (q - 1) == 0 and (b - l) % (q - 1) == 0:
            out.append((rest // (q - 1), b))
    return out


def monomial_basis(F: GF, k: int, l: int) -> list[IsobaricForm]:
    """All g^a h^b of weight k and type l, by increasing b."""
    return [IsobaricForm.monomial(F, a, b) for a, b in monomial_exponents(F.q, k, l)]


def double_cusp_basis(F: GF, k: int, l: int) -> list[IsobaricForm]:
    return [f for f in monomial_basis(F, k, l) if next(iter(f.terms))[1] >= 2]


def det_generic(M, zero):
    """Division-free determinant over a commutative ring.

    Expands along rows, keeping one partial sum per set of used columns;
    O(n 2^n) ring multiplications.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square array")
    if n == 0:
        raise ValueError("determinant of an empty array")
    partial = {0: None}
    for i in range(n):
        nxt = {}
        for used, acc in partial.items():
            for c in range(n):
                bit = 1 << c
                if used & bit:
                    continue
                entry = M[i][c]
                term = entry if acc is None else acc * entry
                # sign: number of used columns to the right of c
                if bin(used >> (c + 1)).count("1") % 2:
                    term = -term
                key = used | bit
                nxt[key] = term if key not in nxt else nxt[key] + term
        partial = nxt
    result = partial[(1 << n) - 1]
    return zero if result is None else result


def det_isobaric(M) -> IsobaricForm:
    """Exact determinant of a square array of forms; rows must make every product homogeneous."""
    first = M[0][0]
    return det_generic(M, IsobaricForm.zero(first.F, first.k, first.l, first.ctx))


def random_form(F: GF, rng, max_weight: int = 60, max_deg: int = 3) -> IsobaricForm:
    """A random nonzero form with coefficients in A, for property checks."""
    q = F.q
    while True:
        k = rng.randrange(0, max_weight + 1)
        l = rng.randrange(q - 1)
        exps = monomial_exponents(q, k, l)
        if not exps:
            continue
        terms = {}
        for ab in exps:
            if rng.random() < 0.7:
                terms[ab] = Poly(F, [rng.randrange(q) for _ in range(rng.randrange(max_deg + 1) + 1)])
        f = IsobaricForm(F, k, l, terms)
        if f:
            return f
