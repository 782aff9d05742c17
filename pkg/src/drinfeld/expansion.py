"""u-expansions of the Carlitz data, E, g, h, g_d, and the map from forms to series.

The parameter is u = 1/e_C(pi~ z), which keeps every expansion in A[[u]]:
the Carlitz period never appears as a stored value.
"""

from __future__ import annotations

import functools

from .field import GF
from .forms import IsobaricForm, monomial_exponents, serre_del
from .poly import Poly, bracket, d_factorial, monics
from .ratfunc import RatFunc
from .residue import PrimeContext
from .series import PrecisionError, USeries, hyperderivative

IDENTIFY_MARGIN = 10


class NotModularError(ValueError):
    """A series is not the expansion of a form of the requested weight and type."""


# additive polynomials -------------------------------------------------------

class AdditivePoly:
    """sum_i l_i tau^i with tau(X) = X^q and l_i in A."""

    __slots__ = ("F", "coeffs")

    def __init__(self, F: GF, coeffs):
        c = [x if isinstance(x, Poly) else Poly.const(F, F(x)) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.F, self.coeffs = F, tuple(c)

    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, AdditivePoly) and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self) -> str:
        return "AdditivePoly(" + ", ".join(str(c) for c in self.coeffs) + ")"

    def __add__(self, other: "AdditivePoly") -> "AdditivePoly":
        n = max(len(self.coeffs), len(other.coeffs))
        zero = Poly(self.F)
        a = self.coeffs + (zero,) * (n - len(self.coeffs))
        b = other.coeffs + (zero,) * (n - len(other.coeffs))
        return AdditivePoly(self.F, [x + y for x, y in zip(a, b)])

    def scale(self, c) -> "AdditivePoly":
        return AdditivePoly(self.F, [x * c for x in self.coeffs])

    def compose(self, other: "AdditivePoly") -> "AdditivePoly":
        """(self o other)_k = sum_i self_i * other_{k-i}^{q^i}."""
        F = self.F
        out = [Poly(F)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * (b ** (F.q**i))
        return AdditivePoly(F, out)

    def __call__(self, x):
        q = self.F.q
        acc, power = None, x
        for i, c in enumerate(self.coeffs):
            if i:
                power = power ** q
            term = power * c
            acc = term if acc is None else acc + term
        return acc


def carlitz_rho(a: Poly) -> AdditivePoly:
    """rho_a for the Carlitz module rho_T = T + tau."""
    F = a.F
    rho_T = AdditivePoly(F, [Poly.T(F), Poly.const(F, 1)])
    power = AdditivePoly(F, [Poly.const(F, 1)])
    acc = AdditivePoly(F, [])
    for c in a.c:
        if c:
            acc = acc + power.scale(Poly.const(F, c))
        power = rho_T.compose(power)
    return acc


# sparse series helpers --------------------------------------------------------

def _sparse_inverse(F: GF, terms: dict[int, Poly], n: int) -> list[Poly]:
    """Coefficients of 1/S mod u^n for a sparse S with constant term 1 and A coefficients."""
    assert terms.get(0) == Poly.const(F, 1)
    rest = sorted((e, -c) for e, c in terms.items() if e and c)
    zero = Poly(F)
    out = [zero] * n
    if n:
        out[0] = Poly.const(F, 1)
    for i in range(1, n):
        acc = zero
        for e, c in rest:
            if e > i:
                break
            prev = out[i - e]
            if prev:
                acc = acc + c * prev
        out[i] = acc
    return out


def _sparse_mul(F: GF, x: dict[int, Poly], y: dict[int, Poly]) -> dict[int, Poly]:
    out: dict[int, Poly] = {}
    for e1, c1 in x.items():
        for e2, c2 in y.items():
            e = e1 + e2
            out[e] = out[e] + c1 * c2 if e in out else c1 * c2
    return {e: c for e, c in out.items() if c}


def _ua_denominator(a: Poly) -> tuple[int, dict[int, Poly]]:
    """(q^D, S) with rho_a(1/u) = u^{-q^D} S(u)."""
    F = a.F
    rho = carlitz_rho(a)
    top = F.q**rho.deg
    return top, {top - F.q**i: c for i, c in enumerate(rho.coeffs) if c}


@functools.lru_cache(maxsize=None)
def u_sub_a(a: Poly, N: int) -> USeries:
    """u_a = 1/rho_a(1/u) to precision N, for monic a."""
    F = a.F
    if not a or not a.is_monic():
        raise ValueError(f"u_a needs a monic a, got {a}")
    top, den = _ua_denominator(a)
    if top >= N:
        raise PrecisionError(f"precision {N} cannot hold the leading term u^{top}")
    inv = _sparse_inverse(F, den, N - top)
    return USeries(F, [Poly(F)] * top + inv, None, N, _normalize=False)


def _ua_power(a: Poly, m: int, N: int) -> USeries:
    """u_a^m = u^{m q^D} / S(u)^m, through the sparse recurrence."""
    F = a.F
    top, den = _ua_denominator(a)
    S = {0: Poly.const(F, 1)}
    for _ in range(m):
        S = _sparse_mul(F, S, den)
    lead = m * top
    if lead >= N:
        return USeries.zero(F, N)
    inv = _sparse_inverse(F, S, N - lead)
    return USeries(F, [Poly(F)] * lead + inv, None, N, _normalize=False)


def _monics_below(F: GF, N: int):
    D = 0
    while F.q**D < N:
        yield from monics(F, D)
        D += 1


def _sum_series(F: GF, N: int, parts) -> USeries:
    zero = Poly(F)
    acc = [zero] * N
    for s in parts:
        for i, c in enumerate(s.nums):
            if c:
                acc[i] = acc[i] + c
    return USeries(F, acc, None, N, _normalize=False)


# Carlitz exponential, zeta ratios, Goss polynomials ---------------------------

def carlitz_exp(F: GF, N: int) -> USeries:
    """e_C(x) = sum_j x^{q^j}/d_j mod x^N (the series variable plays the role of x)."""
    coeffs = [0] * N
    j = 0
    while F.q**j < N:
        coeffs[F.q**j] = RatFunc(Poly.const(F, 1), d_factorial(F, j))
        j += 1
    return USeries.from_coeffs(F, coeffs, N)


@functools.lru_cache(maxsize=None)
def _zeta_table(F: GF, k: int) -> tuple:
    """[z^i](z/e_C(z)) for i = 0..k."""
    q = F.q
    beta = [RatFunc.from_int(F, 1)]
    inv_d = []
    j = 1
    while q**j - 1 <= k:
        inv_d.append((q**j - 1, RatFunc(Poly.const(F, 1), d_factorial(F, j))))
        j += 1
    for i in range(1, k + 1):
        acc = RatFunc(Poly(F))
        for shift, c in inv_d:
            if shift > i:
                break
            if beta[i - shift]:
                acc = acc - beta[i - shift] * c
        beta.append(acc)
    return tuple(beta)


def zeta_ratio(F: GF, k: int) -> RatFunc:
    """zeta_A(k)/pi~^k = [z^k](z/e_C(z)), for k = 0 mod q-1."""
    if k < 0 or k % (F.q - 1):
        raise ValueError(f"zeta_ratio needs k >= 0 with k = 0 mod q-1, got {k}")
    return _zeta_table(F, k)[k]


@functools.lru_cache(maxsize=None)
def goss_coeffs(F: GF, k: int) -> tuple:
    """(c_{0,k}, ..., c_{k-1,k}) with c_{m,k} = [x^{k-1}] e_C(x)^m."""
    if k < 1:
        raise ValueError("Goss polynomials need k >= 1")
    e = carlitz_exp(F, k)
    power = USeries.one(F, k)
    out = []
    for _ in range(k):
        out.append(power.coeff(k - 1))
        power = (power * e).truncate(k)
    return tuple(out)


def goss_poly(F: GF, k: int):
    """G_k(t) = sum_m c_{m,k} t^{m+1}, a polynomial in t over K."""
    from .upoly import UPoly
    zero = RatFunc(Poly(F))
    return UPoly([zero] + list(goss_coeffs(F, k)), zero)


# generators -----------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def E_series(F: GF, N: int) -> USeries:
    """E = sum over monic a of a * u_a."""
    return _sum_series(F, N, (u_sub_a(a, N).scale(a) for a in _monics_below(F, N)))


@functools.lru_cache(maxsize=None)
def g_series(F: GF, N: int) -> USeries:
    """g = 1 - [1] sum over monic a of u_a^{q-1}."""
    q = F.q
    S = _sum_series(F, N, (_ua_power(a, q - 1, N) for a in _monics_below(F, N)))
    return USeries.one(F, N) - S.scale(bracket(F, 1))


@functools.lru_cache(maxsize=None)
def gk_series(F: GF, i: int, N: int) -> USeries:
    """Normalized Eisenstein series g_i of weight q^i - 1 (constant term 1)."""
    if i < 1:
        raise ValueError("g_i needs i >= 1")
    if i == 1:
        return g_series(F, N)
    k = F.q**i - 1
    cs = goss_coeffs(F, k)
    parts = []
    for a in _monics_below(F, N):
        t = u_sub_a(a, N)
        acc = USeries.zero(F, N)
        for c in reversed(cs):
            acc = (acc + USeries.from_coeffs(F, [c], N)) * t
            acc = acc.truncate(N)
        parts.append(acc)
    total = parts[0]
    for s in parts[1:]:
        total = total + s
    return USeries.one(F, N) + total.scale(zeta_ratio(F, k).inverse())


@functools.lru_cache(maxsize=None)
def h_series(F: GF, N: int) -> USeries:
    """h = (q-1) E g - D_1 g, i.e. -del(g) written through the expansions."""
    g = g_series(F, N)
    return (E_series(F, N) * g).scale_int(F.q - 1) - hyperderivative(g, 1)


# forms <-> series -------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _generator(F: GF, N: int, which: str, ctx: PrimeContext | None) -> USeries:
    s = g_series(F, N) if which == "g" else h_series(F, N)
    return s if ctx is None else s.reduce(ctx)


def _pow_trunc(s: USeries, n: int, N: int) -> USeries:
    """s^n mod u^N, truncating every intermediate product."""
    F, p = s.F, s.F.p
    result = USeries.one(F, N, s.ctx)
    base = s.truncate(min(N, s.prec))
    while n:
        d = n % p
        for _ in range(d):
            result = result * base
            if result.prec > N:
                result = result.truncate(N)
        n //= p
        if n:
            base = base.frobenius()
            if base.prec > N:
                base = base.truncate(N)
    return result


@functools.lru_cache(maxsize=None)
def generator_power(F: GF, N: int, which: str, n: int, ctx: PrimeContext | None = None) -> USeries:
    return _pow_trunc(_generator(F, N, which, ctx), n, N)


def expand_monomial(F: GF, a: int, b: int, N: int, ctx: PrimeContext | None = None) -> USeries:
    if a and b:
        s = generator_power(F, N, "g", a, ctx) * generator_power(F, N, "h", b, ctx)
        return s.truncate(N) if s.prec > N else s
    if a:
        return generator_power(F, N, "g", a, ctx)
    return generator_power(F, N, "h", b, ctx)


def expand(f: IsobaricForm, N: int) -> USeries:
    """The u-expansion of f to precision N (over A/(pi) when f is reduced)."""
    F, ctx = f.F, f.ctx
    if not f.terms:
        return USeries.zero(F, N, ctx)
    acc = None
    for (a, b), c in f.terms.items():
        term = expand_monomial(F, a, b, N, ctx).scale(c)
        acc = term if acc is None else acc + term
    return acc


def identify(s: USeries, k: int, l: int) -> IsobaricForm:
    """The form of weight k and type l whose expansion is s.

    Monomials g^a h^b have u-order b with leading coefficient (-1)^b, so the
    system is triangular; the residual must vanish at full precision.
    """
    F, ctx = s.F, s.ctx
    exps = monomial_exponents(F.q, k, l)
    need = (exps[-1][1] + 1 if exps else 1) + IDENTIFY_MARGIN
    if s.prec < need:
        raise PrecisionError(f"identify at weight {k} needs precision {need}, got {s.prec}")
    N = s.prec
    residual = s
    terms = {}
    for a, b in exps:
        c = residual.coeff(b)
        if not c:
            continue
        if b % 2:
            c = -c
        terms[(a, b)] = c
        residual = residual - expand_monomial(F, a, b, N, ctx).scale(c)
    if not residual.is_zero():
        raise NotModularError(
            f"series is not modular of weight {k} and type {l}: residual starts at u^{residual.order()}")
    return IsobaricForm(F, k, l, terms, ctx)


def identify_precision(q: int, k: int, l: int) -> int:
    exps = monomial_exponents(q, k, l)
    return (exps[-1][1] + 1 if exps else 1) + IDENTIFY_MARGIN


@functools.lru_cache(maxsize=None)
def gk_form(F: GF, d: int) -> IsobaricForm:
    """g_d as an isobaric polynomial in g and h."""
    k = F.q**d - 1
    N = identify_precision(F.q, k, 0)
    f = identify(gk_series(F, d, N), k, 0)
    if not f.is_integral():
        raise ArithmeticError(f"g_{d} has non-integral coefficients")
    return f


def g_d_form(ctx: PrimeContext) -> IsobaricForm:
    """g_d for d = deg pi; checks that it reduces to 1 mod pi."""
    f = gk_form(ctx.F, ctx.d)
    red = f.reduce(ctx)
    one_k = expand(red, identify_precision(ctx.q, f.k, 0))
    if not (one_k - USeries.one(ctx.F, one_k.prec, ctx)).is_zero():
        raise ArithmeticError(f"g_{ctx.d} does not reduce to 1 mod {ctx.pi}")
    return f


def del_bridge(f: IsobaricForm, N: int) -> tuple[USeries, USeries]:
    """(expand(del f), D_1(expand f) - k E expand f) for comparison."""
    lhs = expand(serre_del(f), N)
    s = expand(f, N)
    rhs = hyperderivative(s, 1) - (E_series(f.F, N) * s).scale_int(f.k)
    return lhs, rhs
