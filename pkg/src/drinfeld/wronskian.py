"""Modular Wronskians of the weight q^3+1 basis, and the end-to-end theorem checks."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .expansion import expand, g_d_form
from .field import GF, is_prime
from .forms import (IsobaricForm, companion, det_generic, det_isobaric, double_cusp_basis,
                    monomial_basis, mu_gamma, serre_del_n)
from .modp import companion_mod, ss_poly
from .residue import PrimeContext, genus
from .series import PrecisionError, USeries, hyperderivative

__all__ = ["genus", "special_basis", "wronskian_series", "wronskian_serre", "epsilon",
           "exponent_a", "VerifyReport", "verify_theorem_computation",
           "verify_theorem_ahlgrenono", "verify_dww", "verify_companion_products"]


def special_basis(q: int) -> list[IsobaricForm]:
    """g^{n(q+1)} h^{q^2-q+1-n(q-1)}, 0 <= n <= q-1; weight q^3+1, type 1."""
    if not is_prime(q) or q == 2:
        raise ValueError("the special basis needs q = p an odd prime")
    F = GF(q)
    return [IsobaricForm.monomial(F, n * (q + 1), q * q - q + 1 - n * (q - 1)) for n in range(q)]


def wronskian_series(fs: list[USeries]) -> USeries:
    """det(D_m f_i), 0 <= i, m < n."""
    if not fs:
        raise ValueError("Wronskian of an empty list")
    n = len(fs)
    M = [[hyperderivative(f, m) for m in range(n)] for f in fs]
    return det_generic(M, USeries.zero(fs[0].F, fs[0].prec, fs[0].ctx))


def wronskian_serre(fs: list[IsobaricForm]) -> IsobaricForm:
    """det(del_m f_i) through the divided Serre operators; needs len(fs) <= q."""
    if not fs:
        raise ValueError("Wronskian of an empty list")
    q = fs[0].q
    if len(fs) > q:
        raise ValueError(f"the Serre Wronskian needs at most q = {q} forms, got {len(fs)}")
    if len({(f.k, f.l) for f in fs}) != 1:
        raise ValueError("all forms must share weight and type")
    M = [[serre_del_n(f, m) for m in range(len(fs))] for f in fs]
    return det_isobaric(M)


def epsilon(q: int, d: int) -> int:
    """The exponent of x in P(W, x) for the modular Wronskian of level pi, deg pi = d."""
    if d < 3:
        raise ValueError("epsilon needs d >= 3")
    g = genus(q, d)
    n = g * (g + 1)
    _, gamma = mu_gamma(q, (q**d + 1) * n, n)
    num = gamma if d % 2 else q * n - gamma
    e, r = divmod(num, q + 1)
    if r or e < 0:
        raise ArithmeticError(f"epsilon({q},{d}) = {num}/{q + 1} is not a nonnegative integer")
    return e


def exponent_a(q: int, d: int) -> int:
    if d < 3:
        raise ValueError("the exponent a needs d >= 3")
    g = genus(q, d)
    n = g * (g + 1)
    _, gamma = mu_gamma(q, (q**d + 1) * n, n)
    return (g * (g - 1) * (d % 2) * q + gamma) // (q + 1)


@dataclass
class VerifyReport:
    """Named exact checks; passes iff every check holds."""

    name: str
    context: dict
    checks: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(self.checks.values())

    def record(self, check: str, ok: bool, witness=None) -> bool:
        self.checks[check] = bool(ok)
        if witness is not None:
            self.witnesses[check] = str(witness)
        return ok

    def to_json(self) -> dict:
        return {"schema": 1, "name": self.name, "context": self.context, "passed": self.passed,
                "checks": self.checks, "witnesses": self.witnesses,
                "seconds": round(self.seconds, 3)}


def _check_odd_prime_cubic(ctx: PrimeContext) -> int:
    p = ctx.q
    if p == 2 or not is_prime(p):
        raise ValueError("q must be an odd prime")
    if ctx.d != 3:
        raise ValueError("these checks need deg pi = 3")
    return p


def wronskian_exponents(p: int) -> tuple[int, int]:
    return p * p * (p - 1) // 2, p * p * (p + 1) // 2


def verify_theorem_computation(ctx: PrimeContext, N: int | None = None) -> VerifyReport:
    """W of the special basis is +-g^{p^2(p-1)/2} h^{p^2(p+1)/2}, on both the Serre and series sides."""
    p = _check_odd_prime_cubic(ctx)
    F = ctx.F
    ea, eb = wronskian_exponents(p)
    N = eb + 40 if N is None else N
    rep = VerifyReport("computation", {"q": p, "pi": str(ctx.pi), "prec": N})
    t0 = time.perf_counter()
    if N <= eb:
        raise PrecisionError(f"precision {N} cannot see the leading coefficient u^{eb}")

    basis = special_basis(p)
    k = p**3 + 1
    full = monomial_basis(F, k, 1)
    cusp = double_cusp_basis(F, k, 1)
    rep.record("dim M_{q^3+1,1} is genus + 1", len(full) == ctx.genus + 1, len(full))
    rep.record("double cusp dimension is the genus", len(cusp) == ctx.genus, len(cusp))
    rep.record("special basis is the double cusp basis",
               sorted(f.monomials()[0] for f in basis) == sorted(f.monomials()[0] for f in cusp))

    W = wronskian_serre(basis)
    mono = IsobaricForm.monomial(F, ea, eb)
    sign = 0
    if W == mono:
        sign = 1
    elif W == -mono:
        sign = -1
    rep.context["sign"] = sign
    rep.record("Serre Wronskian is a signed monomial", sign != 0, W)

    series = wronskian_series([expand(f, N) for f in basis])
    target = expand(W, N)
    rep.record("series Wronskian equals expansion of the Serre Wronskian",
               series == target and series.prec >= N, f"precision {series.prec}")
    rep.record("u-order", series.order() == eb, series.order())
    rep.seconds = time.perf_counter() - t0
    return rep


def verify_theorem_ahlgrenono(ctx: PrimeContext) -> VerifyReport:
    """(-x)^{p-1} P(G) P(g_3)^{p(p-1)} = S^{p(p-1)} in (A/pi)[x], G = W^2."""
    p = _check_odd_prime_cubic(ctx)
    F = ctx.F
    rep = VerifyReport("ahlgrenono", {"q": p, "pi": str(ctx.pi)})
    t0 = time.perf_counter()
    ea, eb = wronskian_exponents(p)
    G = IsobaricForm.monomial(F, 2 * ea, 2 * eb)
    mg = mu_gamma(p, G.k, G.l)
    rep.record("(mu, gamma)", mg == (2 * p**3 - 2 * p**2 + 3 * p - 1, p - 1)
               and G.k == 2 * p * (p**3 + p) and G.l == 2 % (p - 1), mg)
    PG = companion(G).poly
    expect = [0] * ((p - 1) ** 2) + [1]
    rep.record("P(G, x) = x^{(p-1)^2}",
               [c == e for c, e in zip(PG.coeffs, expect)] == [True] * len(expect)
               and len(PG.coeffs) == len(expect), PG)

    e = p * (p - 1)
    PGr = companion_mod(G, ctx)
    P3 = companion_mod(g_d_form(ctx), ctx)
    lhs = (-PGr.shift(p - 1) if (p - 1) % 2 else PGr.shift(p - 1)) * P3**e
    S = ss_poly(ctx)
    rhs = S**e
    rep.record("congruence chain", lhs == rhs, f"lhs={lhs} rhs={rhs}" if lhs != rhs else None)
    rep.record("degree", lhs.deg == rhs.deg == (ctx.genus + 1) * e, rhs.deg)
    rep.seconds = time.perf_counter() - t0
    return rep


def _random_integral_forms(ctx: PrimeContext, n: int, seed: int, gd: IsobaricForm):
    """Random forms times small powers of g_d, so that filtrations actually drop."""
    import random
    from .forms import random_form
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        f = random_form(ctx.F, rng) * gd ** rng.randrange(3)
        if f.reduce(ctx):
            out.append(f)
    return out


def verify_dww(ctx: PrimeContext, n_random: int = 20, seed: int = 0) -> VerifyReport:
    """S^alpha | x^a P(f, x) for g_d, g_d^2 and random integral forms."""
    from .modp import check_dww
    rep = VerifyReport("dww", {"q": ctx.q, "pi": str(ctx.pi), "random": n_random, "seed": seed})
    t0 = time.perf_counter()
    gd = g_d_form(ctx)
    for label, f in [("g_d", gd), ("g_d^2", gd * gd)] + [
            (f"random {i}", f) for i, f in enumerate(_random_integral_forms(ctx, n_random, seed, gd))]:
        r = check_dww(f, ctx)
        rep.record(label, r.ok, f"k={r.k} w={r.filtration} alpha={r.alpha} a={r.a} rem={r.remainder}")
    rep.seconds = time.perf_counter() - t0
    return rep


def verify_companion_products(ctx: PrimeContext, n_random: int = 20, seed: int = 0) -> VerifyReport:
    """P(f g_d) against P(g_d) P(f), with the -x branch when d is odd and gamma(k, l) = q."""
    from .forms import g_form
    from .modp import companion_product_congruence
    F = ctx.F
    rep = VerifyReport("companion-products",
                       {"q": ctx.q, "pi": str(ctx.pi), "random": n_random, "seed": seed})
    t0 = time.perf_counter()
    gd = g_d_form(ctx)
    fixed = [("1", IsobaricForm.one(F)), ("g^q", g_form(F) ** ctx.q)]
    branches = {}
    for label, f in fixed + [(f"random {i}", f) for i, f in
                             enumerate(_random_integral_forms(ctx, n_random, seed, gd))]:
        r = companion_product_congruence(f, ctx)
        branches[r.branch] = branches.get(r.branch, 0) + 1
        rep.record(label, r.ok, f"branch={r.branch}" + ("" if r.ok else f" lhs={r.lhs} rhs={r.rhs}"))
    rep.context["branches"] = branches
    rep.seconds = time.perf_counter() - t0
    return rep
