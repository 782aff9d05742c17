"""Text and JSON exchange formats.

Polynomials print in descending degree with explicit ``*`` (``2*T^3 + T + 1``).
Over F_q with q = p^e, e > 1, a constant is a polynomial in the field
generator ``w``.  Rational functions print as ``num/den``; series as
``c0 + c1*u + ... + O(u^N)``; forms as sums of ``c*g^a*h^b`` by increasing b.
"""

from __future__ import annotations

import re

from .field import GF
from .poly import Poly
from .ratfunc import RatFunc

SCHEMA = 1


class ParseError(ValueError):
    pass


# formatting -----------------------------------------------------------------

def format_fq(F: GF, a: int) -> str:
    if F.e == 1:
        return str(a)
    digits = [(a // F.p**i) % F.p for i in range(F.e)]
    terms = []
    for i in range(F.e - 1, -1, -1):
        d = digits[i]
        if not d:
            continue
        mono = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
        if not mono:
            terms.append(str(d))
        else:
            terms.append(mono if d == 1 else f"{d}*{mono}")
    return " + ".join(terms) if terms else "0"


def _fq_atom(F: GF, a: int) -> str:
    s = format_fq(F, a)
    return f"({s})" if " + " in s else s


def _monomial(coef: str, var_part: str) -> str:
    if not var_part:
        return coef
    if coef == "1":
        return var_part
    return f"{coef}*{var_part}"


def format_poly(P: Poly, var: str = "T") -> str:
    if not P:
        return "0"
    terms = []
    for i in range(len(P.c) - 1, -1, -1):
        a = P.c[i]
        if not a:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        coef = _fq_atom(P.F, a) if mono else format_fq(P.F, a)
        terms.append(_monomial(coef, mono))
    return " + ".join(terms)


def _is_atom(s: str) -> bool:
    return " + " not in s and "/" not in s


def _paren(s: str) -> str:
    return s if _is_atom(s) else f"({s})"


def format_ratfunc(x: RatFunc) -> str:
    if x.den.deg == 0:
        return format_poly(x.num)
    return f"{_paren(format_poly(x.num))}/{_paren(format_poly(x.den))}"


def format_coeff(c) -> str:
    from .residue import QuadElem, ResidueElem
    if isinstance(c, RatFunc):
        return format_ratfunc(c)
    if isinstance(c, ResidueElem):
        return format_poly(c.v)
    if isinstance(c, Poly):
        return format_poly(c)
    if isinstance(c, QuadElem):
        if not c.b:
            return format_poly(c.a.v)
        return f"{_paren(format_poly(c.a.v))} + {_paren(format_poly(c.b.v))}*s"
    return str(c)


def format_series(f) -> str:
    terms = []
    for i in range(f.prec):
        if not f.nums[i]:
            continue
        c = format_coeff(f.coeff(i))
        mono = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
        terms.append(_monomial(_paren(c) if mono else c, mono))
    terms.append(f"O(u^{f.prec})")
    return " + ".join(terms)


def format_upoly(P, var: str = "x") -> str:
    if not P.coeffs:
        return "0"
    terms = []
    for m in range(len(P.coeffs) - 1, -1, -1):
        c = P.coeffs[m]
        if not c:
            continue
        s = format_coeff(c)
        mono = "" if m == 0 else (var if m == 1 else f"{var}^{m}")
        terms.append(_monomial(_paren(s) if mono else s, mono))
    return " + ".join(terms)


def format_form(f) -> str:
    terms = []
    for (a, b) in sorted(f.terms, key=lambda ab: (ab[1], ab[0])):
        c = format_coeff(f.terms[(a, b)])
        parts = []
        if a:
            parts.append("g" if a == 1 else f"g^{a}")
        if b:
            parts.append("h" if b == 1 else f"h^{b}")
        mono = "*".join(parts)
        terms.append(_monomial(_paren(c) if mono else c, mono))
    return " + ".join(terms) if terms else "0"


# parsing --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif ident is not None:
            # allow implicit products such as 2T or Tu
            out.append(("id", ident))
        else:
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r} in {text!r}")
            out.append(("op", op))
        pos = m.end()
    return out


class _MV:
    """A polynomial in the outer variables with coefficients in K."""

    __slots__ = ("F", "nv", "d")

    def __init__(self, F: GF, nv: int, d: dict):
        self.F, self.nv = F, nv
        self.d = {k: v for k, v in d.items() if v}

    @classmethod
    def const(cls, F, nv, c: RatFunc):
        return cls(F, nv, {(0,) * nv: c})

    def add(self, o):
        d = dict(self.d)
        for k, v in o.d.items():
            d[k] = d[k] + v if k in d else v
        return _MV(self.F, self.nv, d)

    def neg(self):
        return _MV(self.F, self.nv, {k: -v for k, v in self.d.items()})

    def mul(self, o):
        d = {}
        for k1, v1 in self.d.items():
            for k2, v2 in o.d.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                d[k] = d[k] + v1 * v2 if k in d else v1 * v2
        return _MV(self.F, self.nv, d)

    def scalar(self):
        keys = set(self.d)
        if keys - {(0,) * self.nv}:
            return None
        return self.d.get((0,) * self.nv, RatFunc(Poly(self.F)))

    def pow(self, n):
        r = _MV.const(self.F, self.nv, RatFunc.from_int(self.F, 1))
        for _ in range(n):
            r = r.mul(self)
        return r


class _Parser:
    def __init__(self, text: str, F: GF, outer: tuple[str, ...]):
        self.toks = _tokenize(text)
        self.i = 0
        self.F = F
        self.outer = outer
        self.big_o = None
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, kind, val=None):
        t = self.take()
        if t[0] != kind or (val is not None and t[1] != val):
            raise ParseError(f"expected {val or kind} in {self.text!r}")
        return t

    def parse(self) -> _MV:
        v = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return v

    def expr(self) -> _MV:
        sign = 1
        if self.peek() == ("op", "+"):
            self.take()
        elif self.peek() == ("op", "-"):
            self.take()
            sign = -1
        v = self.term()
        if sign < 0:
            v = v.neg()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            v = v.add(t if op == "+" else t.neg())
        return v

    def term(self) -> _MV:
        v = self.factor()
        while True:
            t = self.peek()
            if t == ("op", "*"):
                self.take()
                v = v.mul(self.factor())
            elif t == ("op", "/"):
                self.take()
                s = self.factor().scalar()
                if s is None or not s:
                    raise ParseError(f"division by a non-constant or zero in {self.text!r}")
                v = v.mul(_MV.const(self.F, len(self.outer), s.inverse()))
            elif t[0] in ("num", "id") or t == ("op", "("):
                v = v.mul(self.factor())
            else:
                return v

    def factor(self) -> _MV:
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            n = self.expect("num")[1]
            v = v.pow(n)
        return v

    def _ident(self, name: str) -> _MV:
        F, nv = self.F, len(self.outer)
        one = RatFunc.from_int(F, 1)
        if name in self.outer:
            k = [0] * nv
            k[self.outer.index(name)] = 1
            return _MV(F, nv, {tuple(k): one})
        if name == "T":
            return _MV.const(F, nv, RatFunc(Poly.T(F)))
        if name == "w" and F.e > 1:
            return _MV.const(F, nv, RatFunc(Poly.const(F, F.p)))
        if len(name) > 1:
            # implicit products such as "Tu" or "gh"
            v = _MV.const(F, nv, one)
            for ch in name:
                v = v.mul(self._ident(ch))
            return v
        raise ParseError(f"unknown symbol {name!r} in {self.text!r}")

    def atom(self) -> _MV:
        kind, val = self.take()
        F, nv = self.F, len(self.outer)
        if kind == "num":
            return _MV.const(F, nv, RatFunc.from_int(F, val))
        if kind == "id":
            if val == "O" and self.peek() == ("op", "("):
                self.take()
                self.expect("id", "u")
                n = 1
                if self.peek() == ("op", "^"):
                    self.take()
                    n = self.expect("num")[1]
                self.expect("op", ")")
                if "u" not in self.outer or self.big_o is not None:
                    raise ParseError(f"misplaced O-term in {self.text!r}")
                self.big_o = n
                return _MV(F, nv, {})
            return self._ident(val)
        if (kind, val) == ("op", "("):
            v = self.expr()
            self.expect("op", ")")
            return v
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_ratfunc(text: str, F: GF) -> RatFunc:
    v = _Parser(text, F, ()).parse().scalar()
    return v


def parse_poly(text: str, F: GF) -> Poly:
    v = parse_ratfunc(text, F)
    if v.den.deg != 0:
        raise ParseError(f"{text!r} is not a polynomial")
    return v.num


def parse_series(text: str, F: GF):
    from .series import USeries
    parser = _Parser(text, F, ("u",))
    v = parser.parse()
    if parser.big_o is None:
        raise ParseError(f"series {text!r} has no O(u^N) term")
    N = parser.big_o
    coeffs = [RatFunc(Poly(F))] * N
    for (i,), c in v.d.items():
        if i >= N:
            raise ParseError(f"term u^{i} beyond O(u^{N})")
        coeffs[i] = c
    return USeries.from_coeffs(F, coeffs, N)


def parse_form(text: str, F: GF, k: int | None = None, l: int | None = None):
    from .forms import IsobaricForm
    v = _Parser(text, F, ("g", "h")).parse()
    return IsobaricForm.from_terms(F, v.d, k, l)


def parse_upoly(text: str, F: GF):
    """A polynomial in x over K."""
    from .upoly import UPoly
    v = _Parser(text, F, ("x",)).parse()
    zero = RatFunc(Poly(F))
    n = max((m for (m,) in v.d), default=-1) + 1
    coeffs = [zero] * n
    for (m,), c in v.d.items():
        coeffs[m] = c
    return UPoly(coeffs, zero)


# JSON -----------------------------------------------------------------------

def series_to_json(f) -> dict:
    return {"schema": SCHEMA, "q": f.F.q, "prec": f.prec, "domain": f.domain,
            "coeffs": [format_coeff(f.coeff(i)) for i in range(f.prec)]}


def series_from_json(obj: dict, ctx=None):
    from .series import USeries
    F = GF(obj["q"])
    coeffs = [parse_ratfunc(s, F) for s in obj["coeffs"]]
    return USeries.from_coeffs(F, coeffs, obj["prec"], ctx)


def form_to_json(f) -> dict:
    return {"schema": SCHEMA, "q": f.F.q, "k": f.k, "l": f.l,
            "terms": [{"a": a, "b": b, "c": format_coeff(f.terms[(a, b)])}
                      for (a, b) in sorted(f.terms, key=lambda ab: (ab[1], ab[0]))]}


def form_from_json(obj: dict):
    from .forms import IsobaricForm
    F = GF(obj["q"])
    terms = {(t["a"], t["b"]): parse_ratfunc(t["c"], F) for t in obj["terms"]}
    return IsobaricForm(F, obj["k"], obj["l"], terms)


def upoly_to_json(P, q: int) -> dict:
    return {"schema": SCHEMA, "q": q, "coeffs": [format_coeff(c) for c in P.coeffs]}
