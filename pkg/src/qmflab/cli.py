"""Command-line entry point: ``qmflab <suite|command> [flags] --format {json,csv,text}``.

Exit codes: 0 pass, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import eichler, modgroup, polyspace, qmf, sigma
from .dedekind import ReciprocityError, hecke_symbol, reconstruct
from .exactnum import Mat2Z, format_rat, parse_rat
from .maninhecke import NotEigenvectorError, manin_set, proportionality, tilde_T
from .polyspace import HomPoly
from .report import Check, Report, witness_str
from .suites import SUITES, Config, run_suite

FORMATS = ("json", "csv", "text")


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser, default_format: str = "text"):
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.add_argument("--format", choices=FORMATS, default=default_format)
    p.add_argument("--no-timing", action="store_true", help="zero the timing column (byte-stable output)")


def _symbol_args(p: argparse.ArgumentParser):
    p.add_argument("--weight", type=int, default=None)
    p.add_argument(
        "--recip",
        required=True,
        help="comma-separated coefficients of h^i k^(w-i), i = 0..w, e.g. '-1,0,1' for h^2 - k^2",
    )
    p.add_argument("--c0", default="0", help="the value E(1, 0)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qmflab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    for name in SUITES + ("all",):
        if name == "sigma":
            continue
        sp = sub.add_parser(name, help=("run every suite" if name == "all" else f"run the {name} suite"))
        _common(sp)
        sp.add_argument("--weight", type=int, action="append", help="restrict weights (repeatable)")
        sp.add_argument("--pmin", type=int, default=5)
        sp.add_argument("--pmax", type=int, default=101)
        sp.add_argument("--full-757", action="store_true", help="extend the prime range to 757")

    sp = sub.add_parser("sigma", help="sigma suite, or one of eval / series-check / hecke / probe")
    sp.add_argument("action", nargs="?", choices=("eval", "series-check", "hecke", "probe"))
    _common(sp)
    sp.add_argument("--x", help="rational k/h")
    sp.add_argument("--order", type=int, default=50)
    sp.add_argument("--p", type=int, default=None)

    sp = sub.add_parser("basis", help="exact basis of W_w or U_w")
    _common(sp, "json")
    sp.add_argument("--space", choices=("W", "U"), default="W")
    sp.add_argument("--weight", type=int, required=True)
    sp.add_argument("--parity", choices=("+", "-", "both"), default="both")

    sp = sub.add_parser("symbol", help="evaluate a Dedekind symbol or its Hecke image")
    sp.add_argument("action", choices=("eval", "hecke"))
    _common(sp, "json")
    _symbol_args(sp)
    sp.add_argument("--h", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, default=2)

    sp = sub.add_parser("qmf", help="the quantum modular form psi(E)")
    sp.add_argument("action", choices=("eval", "period", "hecke"))
    _common(sp, "json")
    _symbol_args(sp)
    sp.add_argument("--x", help="rational k/h (period: omit to print the period polynomial)")
    sp.add_argument("--n", type=int, default=2)

    sp = sub.add_parser("diagram-check", help="exact diagram identities at one weight")
    _common(sp)
    sp.add_argument("--weight", type=int, required=True)

    sp = sub.add_parser("manin", help="Manin sets and eigenvalues")
    sp.add_argument("action", choices=("list", "eigen"))
    _common(sp, "json")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--weight", type=int, default=10)
    sp.add_argument("--parity", choices=("+", "-"), default="-")

    sp = sub.add_parser("compat", help="multiplier compatibility per prime")
    _common(sp, "json")
    sp.add_argument("--pmin", type=int, default=5)
    sp.add_argument("--pmax", type=int, default=101)
    sp.add_argument("--full-757", action="store_true")

    sp = sub.add_parser("gamma02", help="Gamma_0(2) utilities")
    sp.add_argument("action", choices=("chi",))
    _common(sp, "json")
    sp.add_argument("--matrix", required=True, help="a,b,c,d")

    sp = sub.add_parser("delta", help="the cusp form Delta")
    sp.add_argument("action", choices=("periods", "eichler", "hecke-check"))
    _common(sp, "json")
    sp.add_argument("--x", default="1/3")
    sp.add_argument("--terms", type=int, default=eichler.DEFAULT_TERMS)
    sp.add_argument("--n", type=int, default=2)
    return ap


# ---------------------------------------------------------------- helpers


def _rat(s: str) -> Fraction:
    try:
        return parse_rat(s)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"not a rational: {s!r}") from e


def _symbol(args):
    coeffs = [_rat(c) for c in args.recip.split(",")]
    g = HomPoly.from_coeffs(coeffs)
    if args.weight is not None and args.weight != g.weight:
        raise UsageError(f"--recip has {len(coeffs)} coefficients, weight {args.weight} needs {args.weight + 1}")
    if g.weight < 2 or g.weight % 2:
        raise UsageError("weight must be even and >= 2")
    try:
        return reconstruct(g, _rat(args.c0))
    except ReciprocityError as e:
        raise UsageError(str(e)) from e


def _poly_json(P: HomPoly) -> list[str]:
    return [format_rat(c) for c in P.coeffs]


def _emit_payload(payload, fmt: str):
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    elif fmt == "csv":
        rows = payload if isinstance(payload, list) else [payload]
        buf = io.StringIO()
        keys = list(rows[0].keys()) if rows else []
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: witness_str(v) for k, v in r.items()})
        print(buf.getvalue(), end="")
    else:
        rows = payload if isinstance(payload, list) else [payload]
        for r in rows:
            print("  ".join(f"{k}={witness_str(v)}" for k, v in r.items()))


def _emit_report(rep: Report, args) -> int:
    if args.no_timing:
        rep.strip_timing()
    print(rep.render(args.format))
    return 0 if rep.passed else 1


def _config(args) -> Config:
    cfg = Config(seed=args.seed)
    if getattr(args, "weight", None):
        bad = [w for w in args.weight if w < 2 or w % 2]
        if bad:
            raise UsageError(f"weights must be even and >= 2: {bad}")
        cfg.weights = tuple(args.weight)
        cfg.hecke_weights = tuple(args.weight)
    if hasattr(args, "pmin"):
        cfg.pmin = args.pmin
        cfg.pmax = 757 if args.full_757 else args.pmax
    return cfg


# ---------------------------------------------------------------- commands


def _cmd_sigma(args) -> int:
    if args.action is None:
        return _emit_report(run_suite("sigma", Config(seed=args.seed)), args)
    if args.action == "eval":
        if not args.x:
            raise UsageError("sigma eval needs --x")
        x = _rat(args.x)
        e = sigma.sigma_eval(x.numerator, x.denominator)
        _emit_payload(
            {"x": format_rat(x), "sigma": repr(e.value), "f": repr(sigma.f_eval(x)), "terms": e.terms, "backend": e.backend},
            args.format,
        )
        return 0
    if args.action == "series-check":
        if args.order < 1:
            raise UsageError("--order must be >= 1")
        r = sigma.series_identity_check(args.order)
        rep = Report("sigma series-check")
        rep.add(Check.of(f"series identity to order {args.order}", r.passed, first_mismatch=r.first_mismatch, coefficients=r.andrews[:8]))
        return _emit_report(rep, args)
    if args.action == "hecke":
        if not args.x or args.p is None:
            raise UsageError("sigma hecke needs --p and --x")
        if args.p < 5 or not modgroup.is_prime(args.p):
            raise UsageError("--p must be a prime >= 5")
        x = _rat(args.x)
        _emit_payload({"p": args.p, "x": format_rat(x), "g": repr(sigma.hecke_sigma(args.p, x))}, args.format)
        return 0
    # probe
    if args.p is not None and (args.p < 5 or not modgroup.is_prime(args.p)):
        raise UsageError("--p must be a prime >= 5")
    probe = sigma.cocycle_probe(args.p)
    rows = []
    for c in probe.chains:
        for m, (x, v) in enumerate(zip(c.points, c.values)):
            rows.append(
                {
                    "base": c.base,
                    "step": m,
                    "x": format_rat(x),
                    "re": v.real,
                    "im": v.imag,
                    "diff": c.diffs[m - 1] if m else "",
                    "note": c.note,
                }
            )
        if not c.points:
            rows.append({"base": c.base, "step": "", "x": "", "re": "", "im": "", "diff": "", "note": c.note})
    _emit_payload(rows, args.format)
    return 0 if probe.passed else 1


def _cmd_basis(args) -> int:
    fn = polyspace.basis_W if args.space == "W" else polyspace.basis_U
    try:
        basis = fn(args.weight, args.parity)
    except ValueError as e:
        raise UsageError(str(e)) from e
    payload = {
        "space": args.space,
        "weight": args.weight,
        "parity": args.parity,
        "convention": "entry i is the coefficient of X^i Y^(w-i)",
        "basis": [_poly_json(b) for b in basis],
    }
    if args.format == "json":
        _emit_payload(payload, "json")
    else:
        _emit_payload([{"index": i, "coeffs": " ".join(_poly_json(b))} for i, b in enumerate(basis)], args.format)
    return 0


def _cmd_symbol(args) -> int:
    if args.h <= 0:
        raise UsageError("--h must be positive")
    E = _symbol(args)
    if args.action == "hecke":
        if args.n < 1:
            raise UsageError("--n must be positive")
        E = hecke_symbol(E, args.n)
    _emit_payload({"h": args.h, "k": args.k, "value": format_rat(E(args.h, args.k))}, args.format)
    return 0


def _cmd_qmf(args) -> int:
    E = _symbol(args)
    f = qmf.psi(E)
    if args.action == "period" and args.x is None:
        _emit_payload({"weight": f.weight, "period_polynomial": _poly_json(qmf.hmap(f))}, args.format)
        return 0
    if args.x is None:
        raise UsageError(f"qmf {args.action} needs --x")
    x = _rat(args.x)
    if args.action == "eval":
        val = f(x)
    elif args.action == "period":
        if x == 0:
            raise UsageError("the period function is not defined at x = 0")
        val = qmf.period_value(f, x)
    else:
        if args.n < 1:
            raise UsageError("--n must be positive")
        val = qmf.hecke_qform(f, args.n)(x)
    _emit_payload({"x": format_rat(x), "value": format_rat(val)}, args.format)
    return 0


def _cmd_diagram_check(args) -> int:
    if args.weight < 2 or args.weight % 2:
        raise UsageError("weight must be even and >= 2")
    d = qmf.check_diagram(args.weight, qmf.sample_rationals(40, hmax=500, seed=args.seed + args.weight))
    rep = Report(f"diagram-check w={args.weight}")
    for name, ok, detail in d.checks:
        rep.add(Check.of(name, ok, **({"detail": detail} if detail else {})))
    return _emit_report(rep, args)


def _cmd_manin(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be positive")
    if args.action == "list":
        rows = [dict(zip("abcd", M.as_tuple())) for M in manin_set(args.n)]
        _emit_payload(rows if args.format != "json" else {"n": args.n, "size": len(rows), "matrices": rows}, args.format)
        return 0
    try:
        basis = polyspace.basis_W(args.weight, args.parity)
    except ValueError as e:
        raise UsageError(str(e)) from e
    rows = []
    ok = True
    for i, v in enumerate(basis):
        try:
            lam = format_rat(proportionality(v, tilde_T(args.n, v)))
        except NotEigenvectorError:
            lam, ok = "not an eigenvector", False
        rows.append({"index": i, "eigenvalue": lam})
    _emit_payload(rows if args.format != "json" else {"n": args.n, "weight": args.weight, "parity": args.parity, "eigen": rows}, args.format)
    return 0 if ok else 1


def _cmd_compat(args) -> int:
    from .suites import multiplier_compat_suite

    cfg = Config(seed=args.seed, pmin=args.pmin, pmax=757 if args.full_757 else args.pmax)
    rep = multiplier_compat_suite(cfg)
    if args.format == "json":
        # per-generator value pairs are included in JSON output
        d = rep.to_dict()
        primes = [p for p in range(max(cfg.pmin, 5), cfg.pmax + 1) if modgroup.is_prime(p)]
        d["pairs"] = {
            str(p): [[str(g), str(l), str(r)] for g, l, r in modgroup.compat_check(p).pairs] for p in primes
        }
        if args.no_timing:
            for c in d["checks"]:
                c["seconds"] = 0.0
        print(json.dumps(d, indent=2))
        return 0 if rep.passed else 1
    return _emit_report(rep, args)


def _cmd_gamma02(args) -> int:
    try:
        M = Mat2Z.parse(args.matrix)
    except ValueError as e:
        raise UsageError(str(e)) from e
    try:
        word = modgroup.decompose_gamma02(M)
    except modgroup.NotInGroupError as e:
        raise UsageError(str(e)) from e
    _emit_payload({"matrix": str(M), "word": str(word), "chi": str(modgroup.chi_word(word))}, args.format)
    return 0


def _cmd_delta(args) -> int:
    if args.action == "periods":
        r = eichler.period_poly_delta(args.terms)
        res = eichler.parity_residuals(args.terms)
        _emit_payload(
            {
                "convention": "entry i is the coefficient of X^i Y^(10-i) in int_0^(i oo) Delta(z) (X z - Y)^10 dz",
                "coeffs": [[c.real, c.imag] for c in r],
                "residual_plus": res["+"],
                "residual_minus": res["-"],
            },
            args.format,
        )
        return 0
    if args.action == "eichler":
        x = _rat(args.x)
        if args.terms < 1:
            raise UsageError("--terms must be positive")
        q = eichler.eichler_integral(x, args.terms)
        payload = {"x": format_rat(x), "Q": repr(q)}
        if x != 0:
            pi = eichler.period_identity(x, args.terms)
            payload.update(period=repr(pi.eichler), polynomial=repr(pi.polynomial), error=pi.error)
        _emit_payload(payload, args.format)
        return 0
    if not 2 <= args.n <= 6:
        raise UsageError("--n must be in 2..6")
    hc = eichler.hecke_period_crosscheck(args.n)
    rep = Report("delta hecke-check")
    rep.add(Check.of(f"tilde_T({args.n}) r^- = tau({args.n}) r^-", hc.passed, tau=hc.tau, scalar=hc.scalar, rel_residual=hc.rel_residual))
    return _emit_report(rep, args)


COMMANDS = {
    "sigma": _cmd_sigma,
    "basis": _cmd_basis,
    "symbol": _cmd_symbol,
    "qmf": _cmd_qmf,
    "diagram-check": _cmd_diagram_check,
    "manin": _cmd_manin,
    "compat": _cmd_compat,
    "gamma02": _cmd_gamma02,
    "delta": _cmd_delta,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on bad usage
    try:
        if args.command in COMMANDS:
            return COMMANDS[args.command](args)
        return _emit_report(run_suite(args.command, _config(args)), args)
    except UsageError as e:
        print(f"qmflab: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
