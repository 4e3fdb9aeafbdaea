"""Command-line front end: ``minorclass {coeffs,dist,sample,asympt,validate,diag}``.

Exit codes: 0 success, 1 sampler failure, 2 usage error, 3 validation
mismatch, 4 resource refusal.  ``MINORCLASS_PRECISION`` sets the default
working precision in bits.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from . import asymptotics, classes, dist, oracle, sampler
from .classes import DomainError, UnsupportedClass, parse_class

EXIT_OK = 0
EXIT_SAMPLER = 1
EXIT_USAGE = 2
EXIT_MISMATCH = 3
EXIT_REFUSAL = 4

MAX_COEFF_ORDER = 2000
EXACT_ASYMPT_LIMIT = 1000
PRECISION_ENV = "MINORCLASS_PRECISION"


class UsageError(ValueError):
    pass


def default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return classes.DEFAULT_PREC
    try:
        bits = int(raw)
    except ValueError:
        raise UsageError(f"{PRECISION_ENV} must be an integer number of bits, got {raw!r}") from None
    if bits < 53:
        raise UsageError(f"{PRECISION_ENV} must be at least 53")
    return bits


def _class_arg(token: str) -> classes.ClassId:
    try:
        return parse_class(token)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _window_arg(token: str) -> tuple[int, int]:
    try:
        lo, hi = (int(p) for p in token.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("size window must look like a:b") from None
    if not 0 <= lo <= hi:
        raise argparse.ArgumentTypeError("size window must satisfy 0 <= a <= b")
    return lo, hi


def _n_list_arg(token: str) -> list[int]:
    try:
        ns = [int(p) for p in token.split(",") if p]
    except ValueError:
        raise argparse.ArgumentTypeError("n-list must be comma-separated integers") from None
    if not ns or any(n < 1 for n in ns):
        raise argparse.ArgumentTypeError("n-list needs positive integers")
    return ns


def _nstr(x, digits: int = 17) -> str:
    return mpmath.nstr(x, digits)


def _count_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# -- subcommands -------------------------------------------------------------------------------

def cmd_coeffs(args, out) -> int:
    if args.max_n > MAX_COEFF_ORDER:
        raise UsageError(f"--max-n is limited to {MAX_COEFF_ORDER}")
    series = (classes.connected_egf if args.connected else classes.all_egf)(args.cls, args.max_n)
    counts = [_count_str(c) for c in series.counts]
    if args.format == "json":
        out.write(json.dumps({"class": str(args.cls), "connected": args.connected, "counts": counts}) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "c_n" if args.connected else "a_n"])
        w.writerows(enumerate(counts))
    else:
        out.write(",".join(counts) + "\n")
    return EXIT_OK


def cmd_dist(args, out) -> int:
    if args.stat == "N":
        d = dist.components_dist(args.cls, args.n)
    elif args.stat == "S":
        d = dist.root_component_dist(args.cls, args.n)
    else:
        backend = "float" if args.float else "exact"
        d = dist.largest_component_dist(args.cls, args.n, backend=backend, prec=args.prec)
    if args.format == "csv":
        out.write(d.to_csv())
    else:
        out.write(d.to_json(str(args.cls), args.n) + "\n")
    return EXIT_OK


def cmd_sample(args, out) -> int:
    if args.samples < 0:
        raise UsageError("--samples must be non-negative")
    config = sampler.SamplerConfig(
        args.cls,
        x=args.x,
        t=args.t,
        seed=args.seed,
        max_size=args.max_size,
        size_window=args.size_window,
        pointed=args.pointed,
    )
    gen = sampler.BoltzmannSampler(config)
    for g in gen.samples(args.samples):
        out.write((g.to_graph6() if args.format == "g6" else g.to_json()) + "\n")
    return EXIT_OK


def _relative_error(est, exact) -> Optional[str]:
    if est is None or exact is None or exact == 0:
        return None
    return _nstr(est / exact - 1, 8)


def cmd_asympt(args, out) -> int:
    cid = args.cls
    sing = classes.singularity_data(cid)
    if args.compare:
        compare = set(args.compare)
        if "hayman" in compare and sing.kind == "convergent":
            raise UsageError(f"{cid} converges at its singularity: the saddle-point estimate does not apply")
    else:
        compare = {"exact", "closed-form"} | ({"hayman"} if sing.kind != "convergent" else set())
    prec = args.prec
    w = csv.writer(out, lineterminator="\n")
    header = ["n", "exact", "hayman", "closed_form", "hayman_rel_err", "closed_form_rel_err"]
    extra = None
    if cid.tag == "forests":
        extra = "a_n/c_n"
    elif cid.tag == "diamond-bowtie-free":
        extra = "c_n*4n/(n!e^n)"
    if extra:
        header.append(extra)
    w.writerow(header)
    with mpmath.workprec(prec):
        for n in args.n_list:
            exact = hay = cf = None
            series = None
            # the exact coefficient is the reference for every relative error
            if n <= EXACT_ASYMPT_LIMIT:
                series = (classes.connected_egf if args.connected else classes.all_egf)(cid, n)
                c = series.coeff(n)
                exact = mpmath.mpf(c.numerator) / c.denominator
            if "hayman" in compare and not args.connected:
                hay = asymptotics.hayman_estimate(cid, n, prec)
            if "closed-form" in compare:
                try:
                    cf = asymptotics.closed_form_asymptotic(cid, n, connected=args.connected, prec=prec)
                except UnsupportedClass:
                    cf = None
            row = [
                n,
                _nstr(exact) if exact is not None else "",
                _nstr(hay) if hay is not None else "",
                _nstr(cf) if cf is not None else "",
                _relative_error(hay, exact) or "",
                _relative_error(cf, exact) or "",
            ]
            if extra:
                value = ""
                if n <= EXACT_ASYMPT_LIMIT:
                    if cid.tag == "forests":
                        ratio = Fraction(classes.all_egf(cid, n).count(n), classes.connected_egf(cid, n).count(n))
                        value = _nstr(mpmath.mpf(ratio.numerator) / ratio.denominator)
                    else:
                        c = classes.connected_egf(cid, n).coeff(n)
                        value = _nstr(mpmath.mpf(c.numerator) / c.denominator * 4 * n / mpmath.e ** n)
                row.append(value)
            w.writerow(row)
    return EXIT_OK


def sl_spot_check(cid: classes.ClassId, n: int) -> bool:
    """``P(S_n = n-k) = ((n-k)/n) P(L_n = n-k)`` for all ``k < n/2``, exactly."""
    s = dist.root_component_dist(cid, n)
    big = dist.largest_component_dist(cid, n)
    return all(
        s.prob(n - k) == Fraction(n - k, n) * big.prob(n - k) for k in range(0, (n + 1) // 2) if n - k > n / 2
    )


def cmd_validate(args, out) -> int:
    if args.max_n > 7 or args.max_n < 1:
        raise UsageError("--max-n must lie between 1 and 7")
    if args.max_n == 7 and not args.allow_seven:
        raise UsageError("--max-n 7 needs --allow-seven")
    ok = True
    out.write(f"{'class':<22}{'n':>3}{'a_n oracle':>12}{'a_n egf':>12}{'c_n oracle':>12}{'c_n egf':>12}  result\n")
    for cid in classes.all_classes_for_tests():
        a_ser = classes.all_egf(cid, args.max_n)
        c_ser = classes.connected_egf(cid, args.max_n)
        for n in range(1, args.max_n + 1):
            a_o, c_o = oracle.count_class(cid, n, method="both", allow_seven=args.allow_seven)
            a_e, c_e = a_ser.count(n), c_ser.count(n)
            good = a_o == a_e and c_o == c_e
            ok &= good
            out.write(
                f"{str(cid):<22}{n:>3}{a_o:>12}{_count_str(a_e):>12}{c_o:>12}{_count_str(c_e):>12}  "
                f"{'PASS' if good else 'FAIL'}\n"
            )
    sl = sl_spot_check(classes.PATH_FORESTS, 30)
    ok &= sl
    out.write(f"SL identity, path-forests, n=30: {'PASS' if sl else 'FAIL'}\n")
    out.write("ALL PASS\n" if ok else "MISMATCH\n")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_diag(args, out) -> int:
    report = asymptotics.admissibility_diagnostics(args.cls, args.grid, args.prec)
    out.write(report.to_json() + "\n")
    return EXIT_OK


# -- parser -----------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="minorclass", description=__doc__.splitlines()[0])
    p.add_argument("--prec", type=int, default=None, help=f"working precision in bits (default ${PRECISION_ENV} or 256)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeffs", help="exact counts a_n (or c_n)")
    c.add_argument("--class", dest="cls", type=_class_arg, required=True)
    c.add_argument("--max-n", type=int, required=True)
    c.add_argument("--connected", action="store_true")
    c.add_argument("--format", choices=("list", "json", "csv"), default="list")
    c.set_defaults(func=cmd_coeffs)

    d = sub.add_parser("dist", help="exact law of N_n, S_n or L_n")
    d.add_argument("--class", dest="cls", type=_class_arg, required=True)
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--stat", choices=("N", "S", "L"), required=True)
    d.add_argument("--float", action="store_true", help="high-precision float backend for L")
    d.add_argument("--format", choices=("json", "csv"), default="json")
    d.set_defaults(func=cmd_dist)

    s = sub.add_parser("sample", help="Boltzmann samples, one graph per line")
    s.add_argument("--class", dest="cls", type=_class_arg, required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--x", type=float)
    g.add_argument("--t", type=float, help="tree parameter T(x), tree-based classes only")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--samples", type=int, default=1)
    s.add_argument("--size-window", type=_window_arg)
    s.add_argument("--max-size", type=int)
    s.add_argument("--pointed", action="store_true", help="forests with a distinguished vertex")
    s.add_argument("--format", choices=("json", "g6"), default="json")
    s.set_defaults(func=cmd_sample)

    a = sub.add_parser("asympt", help="exact vs saddle-point vs closed-form coefficients (CSV)")
    a.add_argument("--class", dest="cls", type=_class_arg, required=True)
    a.add_argument("--n-list", type=_n_list_arg, required=True)
    a.add_argument("--compare", action="append", choices=("exact", "closed-form", "hayman"))
    a.add_argument("--connected", action="store_true")
    a.set_defaults(func=cmd_asympt)

    v = sub.add_parser("validate", help="oracle vs series for every class")
    v.add_argument("--max-n", type=int, default=6)
    v.add_argument("--allow-seven", action="store_true")
    v.set_defaults(func=cmd_validate)

    g2 = sub.add_parser("diag", help="admissibility diagnostics (JSON)")
    g2.add_argument("--class", dest="cls", type=_class_arg, required=True)
    g2.add_argument("--grid", type=int, default=20)
    g2.set_defaults(func=cmd_diag)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    try:
        if args.prec is None:
            args.prec = default_precision()
        elif args.prec < 53:
            raise UsageError("--prec must be at least 53")
        return args.func(args, out)
    except dist.ResourceRefusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSAL
    except (UsageError, UnsupportedClass, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except sampler.SamplerError as exc:
        print(f"sampler failure: {exc}", file=sys.stderr)
        return EXIT_SAMPLER


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run the CLI in-process and capture standard output."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
