"""Reduction mod pi, the supersingular polynomial, filtration and the divisibility laws."""

import math
import random

import pytest

from drinfeld.expansion import expand, g_d_form
from drinfeld.field import GF
from drinfeld.forms import IsobaricForm, companion, g_form, h_form, mu_gamma, random_form
from drinfeld.modp import (DrinfeldRank2, check_dww, companion_mod, companion_product_congruence,
                           filtration, product_of_roots, reduce_form, reduce_series, ss_bruteforce,
                           ss_poly)
from drinfeld.poly import Poly, monic_irreducibles
from drinfeld.ratfunc import RatFunc
from drinfeld.residue import NonIntegralError, PrimeContext, QuadElem, quad_elements
from drinfeld.series import USeries

F3, F5 = GF(3), GF(5)
T = Poly.T(F3)
CUBIC = PrimeContext(T**3 - T + 1)
QUADRATIC = PrimeContext(T**2 + 1)


def _lift(ctx, P):
    return P.map(QuadElem, QuadElem(ctx.zero()))


# reduction ---------------------------------------------------------------------------------

def test_reduce_examples():
    ctx = CUBIC
    gd = g_d_form(ctx)
    assert expand(reduce_form(gd, ctx), 40) == USeries.one(F3, 40, ctx)
    f = random_form(F3, random.Random(0))
    assert not reduce_form(f.scale(ctx.pi), ctx)
    with pytest.raises(NonIntegralError):
        reduce_form(g_form(F3).scale(RatFunc(Poly.const(F3, 1), ctx.pi)), ctx)
    s = expand(f, 30)
    assert reduce_series(s, ctx) == expand(reduce_form(f, ctx), 30)


# the brute-force oracle ------------------------------------------------------------------------

@pytest.mark.parametrize("ctx", [PrimeContext(T), PrimeContext(T + 1), QUADRATIC,
                                 PrimeContext(T**2 + T + 2), CUBIC,
                                 PrimeContext(Poly.T(F5) + 2)],
                         ids=lambda c: str(c.pi))
def test_ss_poly_matches_bruteforce(ctx):
    js = ss_bruteforce(ctx)
    S = ss_poly(ctx)
    assert len(js) == ctx.genus + 1 == S.deg
    assert (QuadElem(ctx.zero()) in js) == bool(ctx.d % 2)
    assert product_of_roots(ctx, js) == _lift(ctx, S)
    assert S.lc == 1
    assert (not S[0]) == bool(ctx.d % 2)


def test_twist_invariance():
    ctx = QUADRATIC
    q = ctx.q
    rng = random.Random(1)
    elements = [x for x in quad_elements(ctx) if x]
    for j in quad_elements(ctx):
        phi = DrinfeldRank2.from_j(ctx, j)
        c = rng.choice(elements)
        twisted = DrinfeldRank2(ctx, c ** (q - 1) * phi.g, c ** (q * q - 1) * phi.delta)
        assert twisted.j == phi.j
        assert twisted.is_supersingular() == phi.is_supersingular()


def test_rank_two_needs_delta():
    with pytest.raises(ValueError):
        DrinfeldRank2(CUBIC, QuadElem(CUBIC.one()), QuadElem(CUBIC.zero()))


@pytest.mark.parametrize("F,d", [(F3, 1), (F3, 2), (F3, 3), (F5, 1), (F5, 2)])
def test_leading_coefficient_of_companion_of_g_d(F, d):
    # P(g_d, x) mod pi has leading coefficient (-1)^deg, so ss_poly rescales it
    for pi in monic_irreducibles(F, d)[:3]:
        ctx = PrimeContext(pi)
        P = companion_mod(g_d_form(ctx), ctx)
        assert P.lc == (-1) ** P.deg
        assert ss_poly(ctx) == P.shift(ctx.gamma0).scale(P.lc.inverse())


# filtration ----------------------------------------------------------------------------------------

def test_filtration_examples():
    ctx = CUBIC
    assert filtration(g_d_form(ctx), ctx) == 0
    assert filtration(g_form(F3).scale(ctx.pi), ctx) == -math.inf
    assert filtration(g_form(F3), ctx) == 2
    assert filtration(h_form(F3), ctx) == 4


@pytest.mark.parametrize("ctx", [QUADRATIC, CUBIC], ids=["d2", "d3"])
def test_filtration_ignores_g_d(ctx):
    rng = random.Random(ctx.d)
    gd = g_d_form(ctx)
    for _ in range(8):
        f = random_form(F3, rng)
        if not f.reduce(ctx):
            continue
        w = filtration(f, ctx)
        assert w <= f.k and (f.k - w) % (3**ctx.d - 1) == 0
        assert filtration(f * gd, ctx) == w
        assert filtration(f * gd * gd, ctx) == w


# Dobi-Wage-Wang ------------------------------------------------------------------------------------

def test_dww_alpha_values():
    ctx = CUBIC
    gd = g_d_form(ctx)
    r0 = check_dww(g_form(F3), ctx)
    assert (r0.alpha, r0.ok) == (0, True)
    r1 = check_dww(gd, ctx)
    assert (r1.alpha, r1.ok, r1.filtration) == (1, True, 0)
    r2 = check_dww(gd * gd, ctx)
    assert (r2.alpha, r2.ok) == (2, True)
    with pytest.raises(ValueError):
        check_dww(g_form(F3).scale(ctx.pi), ctx)


def test_dww_random_forms_even_degree():
    ctx = QUADRATIC
    rng = random.Random(5)
    gd = g_d_form(ctx)
    for _ in range(6):
        f = random_form(F3, rng) * gd ** rng.randrange(3)
        if f.reduce(ctx):
            assert check_dww(f, ctx).ok


# companion products -----------------------------------------------------------------------------------

def test_companion_product_examples():
    r = companion_product_congruence(IsobaricForm.one(F3), CUBIC)
    assert r.ok and r.branch == "product"
    f = g_form(F3) ** 3
    assert mu_gamma(3, f.k, f.l)[1] == 3
    r = companion_product_congruence(f, CUBIC)
    assert r.ok and r.branch == "minus-x"
    # at even degree the product branch is used even when gamma = q
    r = companion_product_congruence(f, QUADRATIC)
    assert r.ok and r.branch == "product"


@pytest.mark.parametrize("ctx", [QUADRATIC, CUBIC], ids=["d2", "d3"])
def test_companion_product_random(ctx):
    rng = random.Random(9)
    for _ in range(15):
        assert companion_product_congruence(random_form(F3, rng), ctx).ok


def test_companion_mod_of_reduced_form():
    f = random_form(F3, random.Random(4))
    assert companion_mod(f.reduce(CUBIC), CUBIC) == companion_mod(f, CUBIC)
    assert companion_mod(f, CUBIC) == companion(f).poly.map(CUBIC.reduce, CUBIC.zero())
