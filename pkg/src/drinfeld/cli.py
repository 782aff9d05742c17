"""Command-line front end.

Exit status: 0 when everything passes, 1 when a check fails, 2 for
configuration or input errors, 3 when the requested precision is too small.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .field import GF, prime_power
from .poly import Poly, monic_irreducibles
from .residue import PrimeContext
from .series import PrecisionError
from .textfmt import ParseError, SCHEMA, form_to_json, format_coeff, format_upoly, parse_form, \
    parse_poly, series_to_json

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_PRECISION = 0, 1, 2, 3
DEFAULT_PREC = 600


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    q: int
    pi: Poly | None
    prec: int | None
    json: bool

    @property
    def F(self) -> GF:
        return GF(self.q)

    def ctx(self) -> PrimeContext:
        if self.pi is None:
            raise ConfigError("this command needs --pi")
        return PrimeContext(self.pi)


def _config(args) -> RunConfig:
    try:
        p, _ = prime_power(args.q)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if p == 2:
        raise ConfigError("q must be odd")
    F = GF(args.q)
    pi = None
    if getattr(args, "pi", None):
        pi = parse_poly(args.pi, F)
        try:
            PrimeContext(pi)
        except ValueError as exc:
            raise ConfigError(f"--pi: {exc}") from None
    if args.prec is not None and args.prec < 2:
        raise ConfigError("--prec must be at least 2")
    return RunConfig(args.q, pi, args.prec, args.json)


def _contexts(cfg: RunConfig, args) -> list[PrimeContext]:
    if getattr(args, "all_primes_of_degree", None):
        return [PrimeContext(pi) for pi in monic_irreducibles(cfg.F, args.all_primes_of_degree)]
    return [cfg.ctx()]


def _emit(cfg: RunConfig, text: str, obj: dict) -> None:
    if cfg.json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)


# subcommands ----------------------------------------------------------------

def cmd_expand(cfg: RunConfig, args) -> int:
    from . import expansion as ex
    F = cfg.F
    N = cfg.prec or DEFAULT_PREC
    target = args.target
    if target == "g":
        s = ex.g_series(F, N)
    elif target == "h":
        s = ex.h_series(F, N)
    elif target == "E":
        s = ex.E_series(F, N)
    elif target == "g_d":
        d = args.d or (cfg.pi.deg if cfg.pi is not None else None)
        if d is None:
            raise ConfigError("g_d needs --d or --pi")
        # beyond the identification margin the isobaric polynomial is the cheap route
        s = ex.expand(ex.gk_form(F, d), N)
    elif target == "u_a" or target.startswith("u_a:"):
        a = target[4:] if target.startswith("u_a:") else args.a
        if not a:
            raise ConfigError("u_a needs a monic polynomial (u_a:<poly> or --a)")
        s = ex.u_sub_a(parse_poly(a, F), N)
    elif target == "form" or target.startswith("form:"):
        text = target[5:] if target.startswith("form:") else args.form
        if not text:
            raise ConfigError("form needs a form (form:<text> or --form)")
        s = ex.expand(parse_form(text, F), N)
    else:
        raise ConfigError(f"unknown expansion target {target!r}")
    _emit(cfg, str(s), series_to_json(s))
    return EXIT_OK


def cmd_ssp(cfg: RunConfig, args) -> int:
    from .modp import product_of_roots, ss_bruteforce, ss_poly
    from .residue import QuadElem
    status = EXIT_OK
    out = []
    for ctx in _contexts(cfg, args):
        S = ss_poly(ctx)
        rec = {"pi": str(ctx.pi), "S": format_upoly(S), "degree": S.deg}
        text = f"S({ctx.pi}) = {format_upoly(S)}"
        if args.oracle:
            js = ss_bruteforce(ctx)
            match = product_of_roots(ctx, js) == S.map(QuadElem, QuadElem(ctx.zero()))
            rec["oracle"] = [format_coeff(j) for j in js]
            rec["match"] = match
            text += f"\n  oracle j = {{{', '.join(rec['oracle'])}}}  match: {match}"
            if not match:
                status = EXIT_FAIL
        out.append(rec)
        if not cfg.json:
            print(text)
    if cfg.json:
        print(json.dumps({"schema": SCHEMA, "q": cfg.q, "results": out}, sort_keys=True))
    return status


def cmd_companion(cfg: RunConfig, args) -> int:
    from .forms import companion
    from .modp import companion_mod
    f = parse_form(args.form, cfg.F)
    P = companion(f)
    poly = companion_mod(f, cfg.ctx()) if cfg.pi is not None else P.poly
    obj = {"schema": SCHEMA, "q": cfg.q, "k": f.k, "l": f.l, "mu": P.mu, "gamma": P.gamma,
           "P": format_upoly(poly)}
    _emit(cfg, f"P(f, x) = {format_upoly(poly)}   (k={f.k}, l={f.l}, mu={P.mu}, gamma={P.gamma})",
          obj)
    return EXIT_OK


def cmd_filtration(cfg: RunConfig, args) -> int:
    from .modp import filtration
    f = parse_form(args.form, cfg.F)
    out = []
    for ctx in _contexts(cfg, args):
        w = filtration(f, ctx, cfg.prec)
        w_s = "-inf" if w == float("-inf") else str(w)
        out.append({"pi": str(ctx.pi), "filtration": w_s})
        if not cfg.json:
            print(f"w_({ctx.pi})(f) = {w_s}")
    if cfg.json:
        print(json.dumps({"schema": SCHEMA, "q": cfg.q, "k": f.k, "results": out}, sort_keys=True))
    return EXIT_OK


def cmd_wronskian(cfg: RunConfig, args) -> int:
    from .expansion import expand
    from .wronskian import special_basis, wronskian_serre, wronskian_series
    F = cfg.F
    fs = [parse_form(t, F) for t in args.forms] if args.forms else special_basis(cfg.q)
    W = wronskian_serre(fs)
    obj = form_to_json(W)
    text = f"W = {W}"
    status = EXIT_OK
    if args.series:
        N = cfg.prec or (max(b for f in [W] for (_, b) in f.terms) + 40 if W else 40)
        ws = wronskian_series([expand(f, N) for f in fs])
        ok = ws == expand(W, N)
        obj["series_check"] = {"prec": N, "equal": ok}
        text += f"\nseries Wronskian to O(u^{N}) equals expand(W): {ok}"
        status = EXIT_OK if ok else EXIT_FAIL
    _emit(cfg, text, obj)
    return status


THEOREMS = ("computation", "ahlgrenono", "dww", "companion-products")


def cmd_verify(cfg: RunConfig, args) -> int:
    from . import wronskian as wr
    chosen = THEOREMS if args.theorem == "all" else (args.theorem,)
    reports = []
    for ctx in _contexts(cfg, args):
        for name in chosen:
            if name == "computation":
                rep = wr.verify_theorem_computation(ctx, cfg.prec)
            elif name == "ahlgrenono":
                rep = wr.verify_theorem_ahlgrenono(ctx)
            elif name == "dww":
                rep = wr.verify_dww(ctx, n_random=args.random, seed=args.seed)
            else:
                rep = wr.verify_companion_products(ctx, n_random=args.random, seed=args.seed)
            reports.append(rep)
            if not cfg.json:
                verdict = "PASS" if rep.passed else "FAIL"
                print(f"{verdict}  {name:<20} pi={ctx.pi}  ({rep.seconds:.2f}s)")
                for check, ok in rep.checks.items():
                    if not ok:
                        print(f"      failed: {check}: {rep.witnesses.get(check, '')}")
    if cfg.json:
        print(json.dumps({"schema": SCHEMA, "reports": [r.to_json() for r in reports]},
                         sort_keys=True))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


# argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=3, help="size of the constant field (odd)")
    common.add_argument("--pi", help="monic irreducible polynomial, e.g. 'T^3+2T+1'")
    common.add_argument("--prec", type=int, help="u-adic precision N")
    common.add_argument("--json", action="store_true", help="emit JSON")

    sweep = argparse.ArgumentParser(add_help=False)
    sweep.add_argument("--all-primes-of-degree", type=int, metavar="D",
                       help="run for every monic irreducible of degree D")

    parser = argparse.ArgumentParser(prog="drinfeld", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="print a u-expansion")
    p.add_argument("target", help="g, h, E, g_d, u_a[:<poly>] or form[:<text>]")
    p.add_argument("--a", help="monic polynomial for u_a")
    p.add_argument("--d", type=int, help="degree for g_d")
    p.add_argument("--form", help="form text for the form target")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("ssp", parents=[common, sweep], help="supersingular polynomial")
    p.add_argument("--oracle", action="store_true", help="compare with brute-force enumeration")
    p.set_defaults(func=cmd_ssp)

    p = sub.add_parser("companion", parents=[common], help="companion polynomial P(f, x)")
    p.add_argument("form")
    p.set_defaults(func=cmd_companion)

    p = sub.add_parser("filtration", parents=[common, sweep], help="filtration mod pi")
    p.add_argument("form")
    p.set_defaults(func=cmd_filtration)

    p = sub.add_parser("wronskian", parents=[common], help="Serre Wronskian of forms")
    p.add_argument("forms", nargs="*", help="forms (default: the special basis)")
    p.add_argument("--series", action="store_true", help="also check against the series Wronskian")
    p.set_defaults(func=cmd_wronskian)

    p = sub.add_parser("verify", parents=[common, sweep], help="run verification suites")
    p.add_argument("--theorem", choices=THEOREMS + ("all",), default="all")
    p.add_argument("--random", type=int, default=20, help="random forms per context")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return args.func(cfg, args)
    except PrecisionError as exc:
        print(f"precision error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (ConfigError, ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
