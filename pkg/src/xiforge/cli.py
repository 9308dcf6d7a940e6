"""Command-line front end: ``xiforge <command> [options]``.

Exit status is 0 on success, 2 on bad usage and 1 when a computation
fails (or, for ``verify``, when any unflagged item fails).
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import fcntl
import io
import json
import os
import sys
import traceback
from pathlib import Path

from . import expansions, keiper, pustylnikov, riemann, verify, wplane
from .apcore import decimal_string
from .errors import XiForgeError
from .golden import SUITE_NAMES
from .specfun import SpecFunContext

CACHE_ENV = "XI_FORGE_CACHE"
S_IDS = ("xi_of_s", "xi_of_1_plus_s", "xi_of_s_plus_half", "xi_m_recentered_half", "xi_plus", "xi_minus")


class CacheBusy(XiForgeError):
    pass


def default_cache(digits: int) -> Path:
    return Path.home() / ".cache" / "xiforge" / f"xi-coeffs-p{digits}.txt"


def cache_path(args) -> Path:
    """--cache beats $XI_FORGE_CACHE beats the per-precision default."""
    if args.cache:
        return Path(args.cache)
    if os.environ.get(CACHE_ENV):
        return Path(os.environ[CACHE_ENV])
    return default_cache(args.digits)


@contextlib.contextmanager
def cache_lock(path: Path):
    """Exclusive advisory lock beside the cache; fails fast if another process holds it."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path.with_name(path.name + ".lock"), "w") as fh:
        try:
            fcntl.flock(fh, fcntl.LOCK_EX | fcntl.LOCK_NB)
        except BlockingIOError:
            raise CacheBusy(f"cache {path} is locked by another process") from None
        try:
            yield
        finally:
            fcntl.flock(fh, fcntl.LOCK_UN)


def load_or_build(args, ctx: SpecFunContext):
    """Coefficient table to depth --max-r, reusing and extending the cache file."""
    path = cache_path(args)
    with cache_lock(path):
        start = pustylnikov.load_table(path) if path.exists() else None
        if start is not None and start.precision != ctx.precision:
            raise XiForgeError(f"cache {path} holds precision {start.precision}, requested {ctx.precision}")
        if start is not None and start.max_r >= args.max_r:
            return pustylnikov.CoeffTable(start.precision, start.values[: args.max_r + 1], "file")
        table = pustylnikov.xi_coeff_table(args.max_r, ctx, start=start, workers=args.workers)
        pustylnikov.append_table(table, path)
        return table


def _csv(header, rows) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(header)
    out.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _series_out(ns, fmt: str) -> str:
    if fmt == "json":
        s = ns.series
        return _json({"id": ns.id, "center": decimal_string(s.center, s.precision), "variable": s.variable,
                      "precision": s.precision, "coefficients": s.quoted()})
    return expansions.series_csv(ns)


# ---------------------------------------------------------------------------
# Commands: each returns (text, exit status)
# ---------------------------------------------------------------------------

def cmd_coeffs(args, ctx):
    t = load_or_build(args, ctx)
    if args.format == "json":
        return _json({"precision": t.precision, "max_r": t.max_r, "values": t.quoted()}), 0
    return pustylnikov.format_table(t), 0


def cmd_series(args, ctx):
    t = load_or_build(args, ctx)
    return _series_out(expansions.named_series(args.id, args.order, t), args.format), 0


def cmd_keiper(args, ctx):
    t = load_or_build(args, ctx)
    rep = keiper.criterion_report(keiper.zero_sums(args.max_k, t, order=args.order))
    if args.format == "csv":
        z, p = rep.sums, rep.precision
        rows = [[k, decimal_string(z.sigma[k - 1], p) if k else "", decimal_string(z.tau[k], p),
                 decimal_string(z.lambda_[k], p)] for k in range(z.max_k + 1)]
        return _csv(["k", "sigma_k", "tau_k", "lambda_k"], rows), 0
    return rep.to_json(), 0


def cmd_table1(args, ctx):
    rows = wplane.table1(ctx)
    if args.format == "json":
        return _json([{"w": str(r.w), "s": str(r.s), "xi_s_plus_half": decimal_string(r.xi_plus_half, ctx.precision),
                       "xi_s_minus_half": decimal_string(r.xi_minus_half, ctx.precision)} for r in rows]), 0
    return wplane.table1_csv(rows, ctx.precision), 0


def cmd_scan(args, ctx):
    grid = args.w or wplane.chebyshev_grid(args.points, args.half_width, ctx.precision)
    rep = wplane.inequality_scan(grid, ctx)
    if args.format == "json":
        q = lambda v: decimal_string(v, ctx.precision)
        return _json({"precision": ctx.precision, "violations": len(rep.violations), "rows": [
            {"w": q(r.w), "s": q(r.s), "xi_h": q(r.xi_h), "xi_plus": q(r.xi_plus), "xi_minus": q(r.xi_minus),
             "xi_m": q(r.xi_m), "chain1_ok": r.chain1_ok, "chain2_ok": r.chain2_ok, "margin": q(r.margin)}
            for r in rep.rows]}), 0
    return rep.to_csv(), 0


def cmd_riemann(args, ctx):
    cfg = riemann.ApproxConfig(args.prefactor_order, args.dirichlet_terms, ctx.precision)
    tab = riemann.approx_compare(args.w or riemann.DEFAULT_GRID, cfg)
    if args.format == "json":
        q = lambda v: decimal_string(v, ctx.precision)
        return _json({"note": riemann.REFERENCE_NOTE, "rows": [
            {"w": q(r.w), "approx": q(r.approx), "direct": q(r.direct), "abs_err": q(r.abs_err),
             "rel_err": q(r.rel_err)} for r in tab.rows]}), 0
    return tab.to_csv(), 0


def cmd_verify(args, ctx):
    t = load_or_build(args, ctx)
    rep = verify.run_suite(args.suite, ctx, max_r=args.max_r, order=args.order, table=t)
    return rep.to_json(), 0 if rep.ok else 1


COMMANDS = {
    "coeffs": (cmd_coeffs, "build or extend the xi_r coefficient cache", "csv"),
    "series": (cmd_series, "Taylor series in s about a chosen centre", "csv"),
    "wseries": (cmd_series, "series in w and their logarithms", "csv"),
    "keiper": (cmd_keiper, "sigma / tau / lambda sums and Li diagnostics", "json"),
    "table1": (cmd_table1, "xi(s +- 1/2) at the six key points", "csv"),
    "scan": (cmd_scan, "inequality chains along real w", "csv"),
    "riemann": (cmd_riemann, "prefactor + Dirichlet approximation near w = 1", "csv"),
    "verify": (cmd_verify, "replay reference values", "json"),
}


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _digits(text):
    v = int(text)
    if v < 10:
        raise argparse.ArgumentTypeError("must be >= 10")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=_digits, default=30, help="significant digits (>= 10)")
    common.add_argument("--order", type=_nonneg, default=12, help="series order")
    common.add_argument("--max-r", type=_nonneg, default=200, help="coefficient table depth")
    common.add_argument("--cache", help=f"cache file (overrides ${CACHE_ENV})")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--workers", type=_positive, default=1, help="processes for the coefficient table")

    p = argparse.ArgumentParser(prog="xiforge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    subs = {name: sub.add_parser(name, parents=[common], help=h) for name, (_, h, _) in COMMANDS.items()}
    subs["series"].add_argument("--id", choices=S_IDS, default="xi_of_s")
    subs["wseries"].add_argument("--id", choices=expansions.W_IDS + expansions.LOG_W_IDS, default="xi_h_of_w")
    subs["keiper"].add_argument("--max-k", type=_nonneg, default=30)
    subs["scan"].add_argument("--points", type=_positive, default=25)
    subs["scan"].add_argument("--half-width", default="0.95")
    subs["scan"].add_argument("--w", nargs="+", help="explicit grid instead of Chebyshev points")
    subs["riemann"].add_argument("--w", nargs="+", help="grid in (0, 1)")
    subs["riemann"].add_argument("--prefactor-order", type=_nonneg, default=2)
    subs["riemann"].add_argument("--dirichlet-terms", type=_positive, default=4)
    subs["verify"].add_argument("--suite", choices=SUITE_NAMES, default="all")
    return p


def _where(exc: BaseException) -> str:
    """module.function of the innermost package frame that raised."""
    pkg = Path(__file__).parent
    where = "cli.main"
    for frame, _ in traceback.walk_tb(exc.__traceback__):
        f = Path(frame.f_code.co_filename)
        if f.parent == pkg:
            where = f"{f.stem}.{frame.f_code.co_name}"
    return where


def _write(text: str, out):
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    fn, _, default_fmt = COMMANDS[args.command]
    args.format = args.format or default_fmt
    ctx = SpecFunContext(args.digits)
    try:
        text, status = fn(args, ctx)
    except (XiForgeError, ValueError, ArithmeticError, OSError) as exc:
        print(f"xiforge: {_where(exc)}: {exc}", file=sys.stderr)
        return 1
    _write(text, args.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
