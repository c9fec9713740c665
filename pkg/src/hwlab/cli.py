"""Command-line front end: ``hwlab <subcommand> ...``.

Tables are written as CSV, reports as ``key: value`` lines. Exit codes:
0 success (including negative verdicts), 2 usage or parse error,
3 domain or precondition error, 4 tolerance failure.
"""
from __future__ import annotations

import argparse
import csv
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, TextIO

from . import oracle, pade, pfcomp
from .density import build_density, density, eval_by_series, maclaurin_coeffs
from .moments import CumulantSeq, cumulants, moments, recover_alpha
from .errors import DomainError, HWLabError, ToleranceError
from .poly import Poly, format_scalar, poly_from_terms, to_scalar

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_TOLERANCE = 0, 2, 3, 4


class ParseError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    alpha: tuple[Fraction, ...] | None = None
    output: str | None = None
    tol: float | None = None
    seed: int | None = None
    fmt: str = "csv"
    threads: int = 1


# ---------------------------------------------------------------- parsing helpers

def parse_scalar(text: str) -> Fraction:
    try:
        return to_scalar(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def parse_list(text: str) -> tuple[Fraction, ...]:
    parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
    if not parts:
        raise ParseError("empty list")
    return tuple(parse_scalar(p) for p in parts)


def parse_poly(text: str) -> Poly:
    """``k:r_k`` pairs separated by commas, e.g. ``2:1,3:-1/2``."""
    terms = {}
    for item in text.split(","):
        if not item.strip():
            continue
        k, sep, r = item.partition(":")
        if not sep:
            raise ParseError(f"polynomial term {item!r} is not of the form k:r")
        try:
            deg = int(k)
        except ValueError as exc:
            raise ParseError(f"bad exponent {k!r}") from exc
        if deg < 0:
            raise ParseError("exponents must be nonnegative")
        terms[deg] = terms.get(deg, Fraction(0)) + parse_scalar(r)
    if not terms:
        raise ParseError("empty polynomial")
    return poly_from_terms(terms)


def read_values(path: str) -> tuple[Fraction, ...]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    tokens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        tokens += [t for t in line.replace(",", " ").split() if t]
    if not tokens:
        raise ParseError(f"{path} holds no values")
    return tuple(parse_scalar(t) for t in tokens)


def _box(text: str) -> tuple[float, float]:
    lo, hi = (float(v) for v in parse_list(text))
    if not hi > lo:
        raise ParseError("box must satisfy lo < hi")
    return lo, hi


def resolve_threads(flag: int | None) -> int:
    raw = flag if flag is not None else os.environ.get("HWLAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise ParseError(f"bad thread count {raw!r}") from exc
    if n < 1:
        raise ParseError("thread count must be positive")
    return n


# ---------------------------------------------------------------- output

def write_csv(out: TextIO, header: Sequence[str], rows) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def write_report(out: TextIO, report: dict[str, str]) -> None:
    for k, v in report.items():
        out.write(f"{k}: {v}\n")


# ---------------------------------------------------------------- subcommands

def cmd_density(cfg: RunConfig, args, out: TextIO) -> int:
    if args.step <= 0:
        raise DomainError("step must be positive")
    if args.to < args.start:
        raise DomainError("--to must not be below --from")
    n = int(round((args.to - args.start) / args.step)) + 1
    xs = [args.start + i * args.step for i in range(n)]
    if args.method == "series":
        ys = [eval_by_series(cfg.alpha, x, tol=cfg.tol or 1e-12, max_terms=args.max_terms) for x in xs]
    else:
        ys = density(cfg.alpha, xs).tolist()
    write_csv(out, ["x", "lambda"], ((repr(x), repr(float(y))) for x, y in zip(xs, ys)))
    return EXIT_OK


def cmd_moments(cfg: RunConfig, args, out: TextIO) -> int:
    if args.cumulants:
        nu = cumulants(cfg.alpha, args.pmax)
        write_csv(out, ["k", "nu"], ((k, format_scalar(v)) for k, v in enumerate(nu.cumulants, start=1)))
    else:
        mu = moments(cfg.alpha, args.pmax)
        write_csv(out, ["p", "mu"], ((p, format_scalar(v)) for p, v in enumerate(mu.moments)))
    return EXIT_OK


def cmd_recover(cfg: RunConfig, args, out: TextIO) -> int:
    mu = read_values(args.moments) if args.moments else parse_list(args.mu)
    res = recover_alpha(mu, args.m, tol=cfg.tol or 1e-12)
    write_report(out, res.report())
    return EXIT_OK


def cmd_pfcheck(cfg: RunConfig, args, out: TextIO) -> int:
    verdict = pfcomp.pf_post_composition(cfg.alpha, parse_poly(args.poly))
    write_report(out, verdict.report())
    return EXIT_OK


def cmd_tnn(cfg: RunConfig, args, out: TextIO) -> int:
    target = build_density(cfg.alpha)
    if args.poly:
        target = pfcomp.compose(parse_poly(args.poly), target)
    samples = oracle.tnn_minor_sample(
        target, args.order, args.trials, cfg.seed or 0,
        box=_box(args.box), y_box=_box(args.y_box) if args.y_box else None,
        certify_dps=args.certify_dps, threads=cfg.threads,
    )
    rows = (
        (
            " ".join(repr(v) for v in s.x),
            " ".join(repr(v) for v in s.y),
            repr(s.det),
            "" if s.certified_det is None else repr(s.certified_det),
        )
        for s in samples
    )
    write_csv(out, ["x", "y", "det", "certified_det"], rows)
    return EXIT_OK


def cmd_pade(cfg: RunConfig, args, out: TextIO) -> int:
    if args.cumulants:
        nu = CumulantSeq(parse_list(args.cumulants))
    else:
        nu = cumulants(cfg.alpha, 2 * args.m + 1)
    pair = pade.pade_denominator(nu, args.m)
    report = {
        "P": ",".join(format_scalar(c) for c in pair.P.coeffs),
        "Q": ",".join(format_scalar(c) for c in pair.Q.coeffs),
        "P_reversed": ",".join(format_scalar(c) for c in pair.denominator_reversed().coeffs),
    }
    try:
        report["kronecker_rank"] = str(pade.kronecker_rank(nu.power_sums()))
    except DomainError as exc:
        report["kronecker_rank"] = f"undetermined ({exc})"
    write_report(out, report)
    return EXIT_OK


def cmd_sample(cfg: RunConfig, args, out: TextIO) -> int:
    for v in oracle.sample(cfg.alpha, args.n, cfg.seed or 0):
        out.write(f"{float(v)!r}\n")
    return EXIT_OK


def cmd_maclaurin(cfg: RunConfig, args, out: TextIO) -> int:
    coeffs = maclaurin_coeffs(cfg.alpha, args.nmax)
    write_csv(out, ["n", "coefficient"], ((n, format_scalar(c)) for n, c in enumerate(coeffs)))
    return EXIT_OK


COMMANDS = {
    "density": cmd_density,
    "moments": cmd_moments,
    "recover": cmd_recover,
    "pfcheck": cmd_pfcheck,
    "tnn": cmd_tnn,
    "pade": cmd_pade,
    "sample": cmd_sample,
    "maclaurin": cmd_maclaurin,
}
REPORTS = {"recover", "pfcheck", "pade"}
NEEDS_ALPHA = {"density", "moments", "pfcheck", "tnn", "sample", "maclaurin"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--alpha", help="comma-separated parameters, e.g. 1,1/2 or 0.5,2")
    src.add_argument("--alpha-file", help="file with one parameter per line or comma-separated")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")
    common.add_argument("--tol", type=float, help="tolerance override")
    common.add_argument("--seed", type=int, help="64-bit RNG seed")
    common.add_argument("--threads", type=int, help="worker threads (default: $HWLAB_THREADS or 1)")

    p = _Parser(prog="hwlab", description="Hypoexponential densities: evaluation, moments, recovery, PF tests.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("density", parents=[common], help="tabulate the density on a grid")
    d.add_argument("--from", dest="start", type=float, default=0.0)
    d.add_argument("--to", type=float, required=True)
    d.add_argument("--step", type=float, required=True)
    d.add_argument("--method", choices=["closed", "series"], default="closed")
    d.add_argument("--max-terms", type=int, default=20000, help="series length cap")

    m = sub.add_parser("moments", parents=[common], help="exact moments (or cumulants)")
    m.add_argument("--pmax", type=int, required=True)
    m.add_argument("--cumulants", action="store_true", help="print nu_1..nu_pmax instead")

    r = sub.add_parser("recover", parents=[common], help="recover alpha from moments")
    rs = r.add_mutually_exclusive_group(required=True)
    rs.add_argument("--moments", help="file holding mu_0, mu_1, ...")
    rs.add_argument("--mu", help="inline comma-separated moments")
    r.add_argument("--m", type=int, required=True)

    f = sub.add_parser("pfcheck", parents=[common], help="Polya-frequency verdict for p(Lambda)")
    f.add_argument("--poly", required=True, help="k:r_k pairs, e.g. 2:1,3:1")

    t = sub.add_parser("tnn", parents=[common], help="sample Toeplitz-kernel minors")
    t.add_argument("--order", type=int, required=True)
    t.add_argument("--trials", type=int, default=1000)
    t.add_argument("--box", default="0,3")
    t.add_argument("--y-box", default=None)
    t.add_argument("--poly", default=None, help="sample minors of p(Lambda) instead of Lambda")
    t.add_argument("--certify-dps", type=int, default=None)

    q = sub.add_parser("pade", parents=[common], help="Pade denominator from cumulants")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--cumulants", help="inline nu_1, nu_2, ... instead of --alpha")

    s = sub.add_parser("sample", parents=[common], help="Monte Carlo draws")
    s.add_argument("-n", type=int, required=True)

    c = sub.add_parser("maclaurin", parents=[common], help="exact one-sided derivatives at 0")
    c.add_argument("--nmax", type=int, required=True)
    return p


def _config(args) -> RunConfig:
    alpha = None
    if args.alpha is not None:
        alpha = parse_list(args.alpha)
    elif args.alpha_file is not None:
        alpha = read_values(args.alpha_file)
    if args.command in NEEDS_ALPHA and alpha is None:
        raise ParseError("--alpha or --alpha-file is required")
    if args.command == "pade" and alpha is None and not args.cumulants:
        raise ParseError("pade needs --alpha or --cumulants")
    if args.tol is not None and not args.tol > 0:
        raise ParseError("--tol must be positive")
    return RunConfig(
        command=args.command, alpha=alpha, output=args.output, tol=args.tol,
        seed=args.seed, fmt="kv" if args.command in REPORTS else "csv",
        threads=resolve_threads(args.threads),
    )


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = _config(args)
    except ParseError as exc:
        print(f"hwlab: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        if cfg.output:
            with open(cfg.output, "w", encoding="utf-8", newline="") as out:
                return COMMANDS[cfg.command](cfg, args, out)
        return COMMANDS[cfg.command](cfg, args, sys.stdout)
    except ParseError as exc:
        print(f"hwlab: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ToleranceError as exc:
        print(f"hwlab: tolerance: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except (DomainError, HWLabError) as exc:
        print(f"hwlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
