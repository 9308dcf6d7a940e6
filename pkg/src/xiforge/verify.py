"""Replay the reference decimals against freshly computed values."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

import mpmath

from . import expansions, keiper, riemann, specfun, wplane
from .apcore import decimal_string, workprec
from .errors import DomainError
from .golden import SUITE_NAMES, SUITES, TABLE1, GoldenItem
from .pustylnikov import CoeffTable, xi_coeff_table
from .specfun import SpecFunContext


@dataclass(frozen=True)
class ItemResult:
    item: GoldenItem
    computed: str
    passed: bool
    deviation: str


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    precision: int
    max_r: int
    items: tuple

    @property
    def failures(self) -> list:
        return [r for r in self.items if not r.passed and not r.item.flagged]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "total": len(self.items),
            "passed": sum(r.passed for r in self.items),
            "failed": len(self.failures),
            "flagged": sum(r.item.flagged for r in self.items),
            "flagged_mismatch": sum(r.item.flagged and not r.passed for r in self.items),
        }

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "precision": self.precision,
            "max_r": self.max_r,
            "summary": self.summary(),
            "items": [{
                "id": r.item.id, "source": r.item.source, "expected": r.item.expected,
                "computed": r.computed, "tolerance": r.item.tolerance, "mode": r.item.mode,
                "deviation": r.deviation, "pass": r.passed, "flagged": r.item.flagged,
                "note": r.item.note,
            } for r in self.items],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _natural(ident: str):
    return [int(p) if p.isdigit() else p for p in re.split(r"(\d+)", ident)]


def _judge(item: GoldenItem, value, precision: int) -> ItemResult:
    exp = mpmath.mpf(item.expected)
    tol = mpmath.mpf(item.tolerance)
    if item.mode == "abs":
        dev = abs(value - exp)
    elif item.mode == "rel":
        dev = abs(value - exp) / abs(exp)
    else:
        dev = abs(value / exp)
        dev = max(dev, 1 / dev) if dev else mpmath.inf
    return ItemResult(item, decimal_string(value, precision), bool(dev <= tol), mpmath.nstr(dev, 6))


# ---------------------------------------------------------------------------
# One computer per suite: maps item id -> computed mpf
# ---------------------------------------------------------------------------

def _suffix(ident: str) -> int:
    return int(ident.rsplit("/", 1)[1])


def _compute_pustylnikov(items, table, order, ctx):
    return {it.id: table[_suffix(it.id)] for it in items}


def _compute_series_s(items, table, order, ctx):
    n = max(_suffix(it.id) for it in items)
    f = expansions.recenter_xi("at_zero", n, table).coeffs
    d = expansions.recenter_xi("minus_half", n, table).coeffs
    plus, minus = expansions.combine_plus_minus(n, table)
    src = {"F": f, "D": d, "E+": plus.coeffs, "E-": minus.coeffs}
    return {it.id: src[it.id.split("/")[0]][_suffix(it.id)] for it in items}


def _compute_w(items, table, order, ctx):
    n = max(order, max(_suffix(it.id) for it in items))
    out, cache = {}, {}
    for it in items:
        ident = it.id.split("/")[0]
        if ident not in cache:
            cache[ident] = expansions.named_series(ident, n, table).coeffs
        out[it.id] = cache[ident][_suffix(it.id)]
    return out


def _compute_sigma(items, table, order, ctx):
    n = max(_suffix(it.id) for it in items)
    series = expansions.recenter_xi("at_zero", n, table)
    sig = keiper.sigma_from_series(series, n)
    return {it.id: sig[_suffix(it.id) - 1] for it in items}


def _compute_table1(items, table, order, ctx):
    out = {}
    # reference rows and computed rows share the key-point order
    for (w, *_), row in zip(TABLE1, wplane.table1(ctx)):
        out[f"table1/w={w}/xi_h"] = row.xi_plus_half
        out[f"table1/w={w}/xi_m"] = row.xi_minus_half
    return {it.id: out[it.id] for it in items}


def _compute_closed(items, table, order, ctx):
    out = {}
    for it in items:
        kind, name = it.id.split("/", 1)
        if kind == "closed" and name in specfun.CLOSED_FORMS:
            out[it.id] = specfun.closed_form_coeff(name, ctx).value
        elif name == "gamma1":
            out[it.id] = specfun.classical("stieltjes_k", 1, 1, ctx).value
        elif name == "zeta_prime_half":
            out[it.id] = specfun.zeta_half_derivative_residual(ctx).value
        elif kind == "direct":
            arg = mpmath.mpf(1) / 2 if name == "xi(1/2)" else mpmath.mpf(3) / 2
            out[it.id] = specfun.xi_direct(arg, ctx).value
        elif name == "tau_bound":
            z = keiper.zero_sums(0, table)
            out[it.id] = 2 * z.sigma[0]
        else:
            raise DomainError(f"no computation registered for {it.id}")
    return out


def _compute_riemann(items, table, order, ctx):
    cfg = riemann.ApproxConfig(precision=ctx.precision)
    return {it.id: riemann.dirichlet_rel_error(it.id.split("w=")[1], cfg).value for it in items}


_COMPUTERS = {
    "pustylnikov_coeffs": _compute_pustylnikov,
    "series_s": _compute_series_s,
    "series_w": _compute_w,
    "log_series_w": _compute_w,
    "keiper_sigma": _compute_sigma,
    "table1": _compute_table1,
    "closed_forms": _compute_closed,
    "riemann_errors": _compute_riemann,
}
_NEEDS_TABLE = {"pustylnikov_coeffs", "series_s", "series_w", "log_series_w", "keiper_sigma", "closed_forms"}


def run_suite(name: str, ctx: SpecFunContext | None = None, *, max_r: int = 200, order: int = 12,
              table: CoeffTable | None = None, workers: int = 1) -> VerificationReport:
    """Compute every item of a suite (or ``all``) and compare with its reference.

    ``table`` lets callers reuse a coefficient table; it must have at least
    the requested precision and depth ``max_r``.
    """
    if name not in SUITE_NAMES:
        raise DomainError(f"unknown suite {name!r}; expected one of {SUITE_NAMES}")
    ctx = ctx or SpecFunContext()
    names = list(SUITES) if name == "all" else [name]
    if table is None and _NEEDS_TABLE.intersection(names):
        table = xi_coeff_table(max_r, ctx, workers=workers)
    elif table is not None:
        if table.precision != ctx.precision:
            raise DomainError(f"table precision {table.precision} != requested {ctx.precision}")
        if table.max_r < max_r:
            raise DomainError(f"table depth {table.max_r} < requested max_r {max_r}")
        if table.max_r > max_r:
            table = CoeffTable(table.precision, table.values[: max_r + 1], table.provenance)
    results = []
    with workprec(ctx.precision):
        for n in names:
            items = SUITES[n]
            values = _COMPUTERS[n](items, table, order, ctx)
            results += [_judge(it, values[it.id], ctx.precision) for it in items]
    results.sort(key=lambda r: _natural(r.item.id))
    return VerificationReport(name, ctx.precision, max_r, tuple(results))
