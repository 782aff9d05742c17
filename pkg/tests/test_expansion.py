"""Carlitz module, u_a, E, g, h, g_i, expand and identify."""

import random

import pytest

from drinfeld.expansion import (AdditivePoly, E_series, NotModularError, carlitz_exp, carlitz_rho,
                                del_bridge, expand, g_d_form, g_series, gk_form, gk_series,
                                goss_coeffs, goss_poly, h_series, identify, identify_precision,
                                u_sub_a, zeta_ratio)
from drinfeld.field import GF
from drinfeld.forms import (IsobaricForm, delta_form, g_form, h_form, monomial_basis, random_form,
                            serre_del)
from drinfeld.poly import Poly, bracket, monic_irreducibles, monics
from drinfeld.ratfunc import RatFunc
from drinfeld.residue import PrimeContext
from drinfeld.series import PrecisionError, USeries, hyperderivative

F3, F5 = GF(3), GF(5)


def T_(F):
    return Poly.T(F)


# Carlitz module --------------------------------------------------------------------------

def test_rho_examples():
    for F in (F3, F5):
        T, q = T_(F), F.q
        assert carlitz_rho(T).coeffs == (T, Poly.const(F, 1))
        assert carlitz_rho(T**2).coeffs == (T**2, T**q + T, Poly.const(F, 1))
        for c in range(1, q):
            assert carlitz_rho(Poly.const(F, c)).coeffs == (Poly.const(F, c),)


def test_rho_is_a_ring_homomorphism():
    rng = random.Random(0)
    F = F3
    for _ in range(30):
        a = Poly(F, [rng.randrange(3) for _ in range(rng.randrange(1, 4))])
        b = Poly(F, [rng.randrange(3) for _ in range(rng.randrange(1, 4))])
        if not a or not b:
            continue
        assert carlitz_rho(a * b) == carlitz_rho(a).compose(carlitz_rho(b))
        assert carlitz_rho(a * b) == carlitz_rho(b).compose(carlitz_rho(a))
        if a + b:
            assert carlitz_rho(a + b) == carlitz_rho(a) + carlitz_rho(b)


def test_rho_evaluation():
    # rho_T(x) = T x + x^q on polynomials
    F = F3
    T = T_(F)
    x = T**2 + 1
    assert carlitz_rho(T)(x) == T * x + x**3
    assert AdditivePoly(F, [T, 0, 1])(x) == T * x + x**9


# u_a ----------------------------------------------------------------------------------------

def _ua_oracle(a, N):
    # 1 / rho_a(1/u) = u^{q^D} / sum_i l_i u^{q^D - q^i}, with a generic series inverse
    F = a.F
    q, D = F.q, a.deg
    rho = carlitz_rho(a)
    den = [0] * N
    for i, l in enumerate(rho.coeffs):
        if q**D - q**i < N:
            den[q**D - q**i] = l
    inv = USeries.from_coeffs(F, den, N).inverse()
    return inv.shift(q**D).truncate(N)


def test_u_a_examples():
    F = F3
    T = T_(F)
    assert u_sub_a(Poly.const(F, 1), 10) == USeries.monomial(F, 1, 10)
    N = 20
    explicit = [0] * N
    for k in range((N - 3 + 1) // 2):
        explicit[3 + 2 * k] = (-T) ** k
    assert u_sub_a(T, N) == USeries.from_coeffs(F, explicit, N)


@pytest.mark.parametrize("F", [F3, F5], ids=["q3", "q5"])
def test_u_a_matches_generic_inverse(F):
    N = 60
    for d in (1, 2):
        for a in monics(F, d):
            if F.q**d < N:
                s = u_sub_a(a, N)
                assert s == _ua_oracle(a, N)
                assert s.order() == F.q**d and s.coeff(F.q**d) == 1


def test_u_a_coefficients_are_integral():
    F = F3
    for d in range(4):
        for a in monics(F, d):
            assert u_sub_a(a, 60).has_integral_coeffs()


# Carlitz exponential, zeta ratios, Goss polynomials ----------------------------------------

def test_carlitz_functional_equation():
    for F in (F3, F5):
        T = T_(F)
        e = carlitz_exp(F, 200)
        assert e.scale_variable(T) == e.scale(T) + e**F.q


@pytest.mark.parametrize("F", [F3, F5], ids=["q3", "q5"])
def test_zeta_ratio_against_series_inverse(F):
    q = F.q
    N = 3 * q * q
    e = carlitz_exp(F, N + 1)
    # e_C(z)/z, then its inverse: z/e_C(z)
    e_over_z = USeries(F, e.nums[1:], e.den, N)
    oracle = e_over_z.inverse()
    assert zeta_ratio(F, 0) == 1
    assert zeta_ratio(F, q - 1) == RatFunc(Poly.const(F, -1), bracket(F, 1))
    for k in range(0, N, q - 1):
        assert zeta_ratio(F, k) == oracle.coeff(k)
    with pytest.raises(ValueError):
        zeta_ratio(F, 1)


def test_goss_polynomials():
    for F in (F3, F5):
        q = F.q
        t1 = goss_poly(F, 1)
        assert [bool(c) for c in t1.coeffs] == [False, True]
        for k in range(1, q + 1):
            G = goss_poly(F, k)
            assert G.deg == k and G.lc == 1 and not any(G.coeffs[:-1])
        for k in range(1, 3 * q):
            assert goss_coeffs(F, k)[k - 1] == 1


# E, g, h --------------------------------------------------------------------------------------

def test_E_examples():
    F = F3
    E = E_series(F, 6)
    assert E == USeries.from_coeffs(F, [0, 1, 0, 0, 0, 1], 6)
    for F in (F3, F5):
        E = E_series(F, 40)
        assert E.truncate(F.q) == USeries.monomial(F, 1, F.q)


def test_g_and_h_examples():
    for F in (F3, F5):
        q = F.q
        g, h = g_series(F, 60), h_series(F, 60)
        assert g.coeff(0) == 1 and g.coeff(q - 1) == -bracket(F, 1)
        assert all(not g.coeff(i) for i in range(1, q - 1))
        assert h.order() == 1 and h.coeff(1) == -1
        assert g.has_integral_coeffs() and h.has_integral_coeffs()
        assert hyperderivative(h, 1) == (E_series(F, 60) * h).scale_int(q + 1)
    g3 = g_series(F3, 4)
    assert g3 == USeries.from_coeffs(F3, [1, 0, -bracket(F3, 1), 0], 4)


def test_g_is_one_mod_linear_primes():
    for F in (F3, F5):
        g = g_series(F, 80)
        for pi in monic_irreducibles(F, 1):
            assert g.congruent(USeries.one(F, 80), PrimeContext(pi))


def test_gk_series_one_mod_primes_of_its_degree():
    for F, i, count in ((F3, 2, 3), (F3, 3, 8), (F5, 2, 10)):
        s = gk_series(F, i, 40)
        assert s.coeff(0) == 1
        primes = monic_irreducibles(F, i)
        assert len(primes) == count
        for pi in primes:
            assert s.congruent(USeries.one(F, 40), PrimeContext(pi))


# the isobaric form of g_d against an independent recursion ----------------------------------------

def _gekeler(F, k):
    # g_k = -[k-1] g_{k-2} Delta^{q^{k-2}} + g_{k-1} g^{q^{k-1}}, g_0 = 1, g_1 = g
    q = F.q
    g, D = g_form(F), delta_form(F)
    prev, cur = IsobaricForm.one(F), g
    for i in range(2, k + 1):
        prev, cur = cur, (prev * D ** (q ** (i - 2))).scale(-bracket(F, i - 1)) \
            + cur * g ** (q ** (i - 1))
    return cur


def test_gk_form_matches_recursion():
    F = F3
    g, h = g_form(F), h_form(F)
    assert gk_form(F, 1) == g
    assert gk_form(F, 2) == g**4 + (h * h).scale(bracket(F, 1))
    for F, d in ((F3, 2), (F3, 3), (F5, 2)):
        assert gk_form(F, d) == _gekeler(F, d)


def test_g_d_form():
    F = F3
    T = T_(F)
    assert g_d_form(PrimeContext(T)) == g_form(F)
    for d in (2, 3):
        for pi in monic_irreducibles(F, d):
            ctx = PrimeContext(pi)
            red = expand(g_d_form(ctx).reduce(ctx), 60)
            assert red == USeries.one(F, 60, ctx)


# expand and identify ----------------------------------------------------------------------------

def test_expand_examples():
    for F in (F3, F5):
        q = F.q
        assert expand(g_form(F), 30) == g_series(F, 30)
        s = expand(delta_form(F), 30)
        assert s.order() == q - 1 and s.coeff(q - 1) == -1


@pytest.mark.parametrize("F", [F3, F5], ids=["q3", "q5"])
def test_expand_is_a_homomorphism(F):
    rng = random.Random(F.q)
    N = 50
    for _ in range(15):
        f1, f2 = random_form(F, rng, 40), random_form(F, rng, 40)
        assert expand(f1 * f2, N) == expand(f1, N) * expand(f2, N)
        if (f1.k, f1.l) == (f2.k, f2.l):
            assert expand(f1 + f2, N) == expand(f1, N) + expand(f2, N)


@pytest.mark.parametrize("F", [F3, F5], ids=["q3", "q5"])
def test_serre_bridge(F):
    rng = random.Random(11)
    for _ in range(10):
        f = random_form(F, rng, 40)
        lhs, rhs = del_bridge(f, 40)
        assert lhs == rhs
        assert lhs == expand(serre_del(f), 40)


@pytest.mark.parametrize("F", [F3, F5], ids=["q3", "q5"])
def test_identify_round_trips(F):
    q = F.q
    for k, l in ((q - 1, 0), (q + 1, 1), (q**3 + 1, 1)):
        N = identify_precision(q, k, l)
        for f in monomial_basis(F, k, l):
            assert identify(expand(f, N), k, l) == f
    f = IsobaricForm.monomial(F, 4, 5) if q == 3 else IsobaricForm.monomial(F, 2, 3)
    assert identify(expand(f, identify_precision(q, f.k, f.l)), f.k, f.l) == f
    assert identify(h_series(F, 30), q + 1, 1) == h_form(F)
    assert identify(g_series(F, 30), q - 1, 0) == g_form(F)


def test_identify_rejects_quasimodular_E():
    for F in (F3, F5):
        with pytest.raises(NotModularError):
            identify(E_series(F, 40), 2, 1)


def test_identify_needs_precision():
    with pytest.raises(PrecisionError):
        identify(g_series(F3, 5), 2, 0)


def test_identify_over_residue_field():
    ctx = PrimeContext(Poly(F3, [1, 2, 0, 1]))
    f = random_form(F3, random.Random(2), 40)
    N = identify_precision(3, f.k, f.l)
    assert identify(expand(f, N).reduce(ctx), f.k, f.l) == f.reduce(ctx)
    assert expand(f.reduce(ctx), N) == expand(f, N).reduce(ctx)
