"""Reduction mod pi: supersingular polynomials, filtration, and the divisibility laws."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .expansion import NotModularError, expand, g_d_form, identify, identify_precision
from .forms import IsobaricForm, companion, monomial_exponents
from .poly import NEG_INF, Poly
from .residue import PrimeContext, QuadElem, quad_elements
from .series import USeries
from .upoly import UPoly


def reduce_form(f: IsobaricForm, ctx: PrimeContext) -> IsobaricForm:
    return f.reduce(ctx)


def reduce_series(s: USeries, ctx: PrimeContext) -> USeries:
    return s.reduce(ctx)


def reduce_upoly(P: UPoly, ctx: PrimeContext) -> UPoly:
    return P.map(ctx.reduce, ctx.zero())


# brute-force supersingular oracle ---------------------------------------------

def _frob(x: QuadElem, q: int, i: int) -> QuadElem:
    for _ in range(i):
        x = x ** q
    return x


class DrinfeldRank2:
    """phi_T = t + g tau + Delta tau^2 over F_{q^{2d}}, t = T mod pi."""

    def __init__(self, ctx: PrimeContext, g_coeff: QuadElem, delta_coeff: QuadElem):
        if not delta_coeff:
            raise ValueError("Delta must be nonzero for a rank-2 module")
        self.ctx, self.g, self.delta = ctx, g_coeff, delta_coeff

    @classmethod
    def from_j(cls, ctx: PrimeContext, j: QuadElem) -> "DrinfeldRank2":
        one = QuadElem(ctx.one())
        if not j:
            return cls(ctx, QuadElem(ctx.zero()), one)
        return cls(ctx, one, j.inverse())

    @property
    def j(self) -> QuadElem:
        return self.g ** (self.ctx.q + 1) / self.delta

    def phi_pi(self, terms: int) -> list[QuadElem]:
        """The first `terms` tau-coefficients of phi_pi."""
        ctx, q = self.ctx, self.ctx.q
        t = QuadElem(ctx.reduce(Poly.T(ctx.F)))
        phi_T = [t, self.g, self.delta]
        zero = QuadElem(ctx.zero())
        power = [QuadElem(ctx.one())] + [zero] * (terms - 1)
        acc = [zero] * terms
        # frobenius powers of phi_T's coefficients are reused below
        for c in ctx.pi.c:
            if c:
                acc = [x + y * c for x, y in zip(acc, power)]
            nxt = [zero] * terms
            for i, a in enumerate(phi_T):
                if not a:
                    continue
                for k in range(i, terms):
                    b = power[k - i]
                    if b:
                        nxt[k] = nxt[k] + a * _frob(b, q, i)
            power = nxt
        return acc

    def is_supersingular(self) -> bool:
        d = self.ctx.d
        return not any(self.phi_pi(2 * d))


def ss_bruteforce(ctx: PrimeContext) -> list[QuadElem]:
    """Every supersingular j-invariant in F_{q^{2d}}, by direct computation of phi_pi."""
    return [j for j in quad_elements(ctx) if DrinfeldRank2.from_j(ctx, j).is_supersingular()]


def product_of_roots(ctx: PrimeContext, roots) -> UPoly:
    zero, one = QuadElem(ctx.zero()), QuadElem(ctx.one())
    P = UPoly([one], zero)
    for r in roots:
        P = P * UPoly([-r, one], zero)
    return P


# supersingular polynomial -----------------------------------------------------

@functools.lru_cache(maxsize=None)
def ss_poly(ctx: PrimeContext) -> UPoly:
    """S_p(x): x^{gamma0} P(g_d, x) mod pi, scaled to be monic.

    P(g_d, x) has leading coefficient (-1)^{deg P}; the scaling removes that sign.
    """
    P = reduce_upoly(companion(g_d_form(ctx)).poly, ctx)
    return P.shift(ctx.gamma0).monic()


def companion_mod(f: IsobaricForm, ctx: PrimeContext) -> UPoly:
    return reduce_upoly(companion(f).poly, ctx) if f.ctx is None else companion(f).poly


# filtration -------------------------------------------------------------------

def filtration(f: IsobaricForm, ctx: PrimeContext, N: int | None = None):
    """Least weight k' = k - m(q^d - 1) >= 0 (same type) of a form congruent to f mod pi."""
    fr = f.reduce(ctx)
    if not fr:
        return NEG_INF
    q, step = ctx.q, ctx.q**ctx.d - 1
    need = identify_precision(q, f.k, f.l)
    N = need if N is None else N
    if N < need:
        from .series import PrecisionError
        raise PrecisionError(f"filtration of weight {f.k} needs precision {need}")
    s = expand(fr, N)
    if s.is_zero():
        return NEG_INF
    k2 = f.k % step
    while k2 <= f.k:
        if monomial_exponents(q, k2, f.l):
            try:
                identify(s, k2, f.l)
                return k2
            except NotModularError:
                pass
        k2 += step
    raise AssertionError("f is not congruent to itself")


@dataclass
class DWWReport:
    k: int
    filtration: int
    alpha: int
    a: int
    remainder: UPoly
    ok: bool


def check_dww(f: IsobaricForm, ctx: PrimeContext) -> DWWReport:
    """S^alpha divides x^a P(f, x) in (A/pi)[x]."""
    from .forms import mu_gamma
    w = filtration(f, ctx)
    if w == NEG_INF:
        raise ValueError("f vanishes mod pi; its filtration is -infinity")
    step = ctx.q**ctx.d - 1
    alpha, r = divmod(f.k - w, step)
    if r:
        raise ArithmeticError(f"(k - w)/(q^d - 1) = ({f.k} - {w})/{step} is not an integer")
    _, gamma = mu_gamma(ctx.q, f.k, f.l)
    a = (alpha * ctx.gamma0 * ctx.q + gamma) // (ctx.q + 1)
    P = companion_mod(f, ctx).shift(a)
    S = ss_poly(ctx)
    rem = P % (S ** alpha)
    return DWWReport(f.k, w, alpha, a, rem, not rem)


@dataclass
class CompanionProductReport:
    branch: str
    lhs: UPoly
    rhs: UPoly
    ok: bool = field(init=False)

    def __post_init__(self):
        self.ok = self.lhs == self.rhs


def companion_product_congruence(f: IsobaricForm, ctx: PrimeContext) -> CompanionProductReport:
    """P(f g_d) = P(g_d) P(f), or -x P(g_d) P(f) when d is odd and gamma(k, l) = q."""
    from .forms import mu_gamma
    gd = g_d_form(ctx)
    lhs = companion_mod(f * gd, ctx)
    rhs = companion_mod(gd, ctx) * companion_mod(f, ctx)
    _, gamma = mu_gamma(ctx.q, f.k, f.l)
    branch = "product"
    if ctx.d % 2 and gamma == ctx.q:
        branch = "minus-x"
        rhs = -(rhs.shift(1))
    return CompanionProductReport(branch, lhs, rhs)
