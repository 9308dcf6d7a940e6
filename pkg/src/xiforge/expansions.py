"""Derived power series of the completed zeta built from the xi_r table.

* ``recenter_xi`` re-expands xi(s + 1/2) = sum xi_r s^(2r) about s = 0, 1
  and -1/2 by the binomial theorem.
* ``combine_plus_minus`` gives the half-sum / half-difference series
  xi_+(s) and xi_-(s) of xi(s + 1/2) and xi(s - 1/2).
* ``w_series`` substitutes s = 1/(1 - w) and collects powers of w,
  exchanging the order of summation so each w^n coefficient is a
  convergent sum over r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .apcore import PowerSeries, binom, decimal_string, mobius_pow_coeff, series_log, workprec
from .errors import DomainError, TruncationError
from .pustylnikov import CoeffTable

SERIES_IDS = (
    "xi_of_s", "xi_of_1_plus_s", "xi_of_s_plus_half", "xi_plus", "xi_minus",
    "xi_h_of_w", "xi_m_of_w", "xi_plus_of_w", "xi_minus_of_w",
    "log_xi_h_of_w", "log_xi_m_of_w", "log_xi_plus_of_w", "log_xi_minus_of_w",
    "xi_m_recentered_half",
)
W_IDS = ("xi_h_of_w", "xi_m_of_w", "xi_plus_of_w", "xi_minus_of_w")
LOG_W_IDS = tuple("log_" + i for i in W_IDS)

# shift a in xi(a + s) = sum_r xi_r (a - 1/2 + s)^(2r); value is a - 1/2
_RECENTER = {
    "at_zero": ("xi_of_s", mpmath.mpf(-1) / 2),
    "at_one": ("xi_of_1_plus_s", mpmath.mpf(1) / 2),
    "minus_half": ("xi_m_recentered_half", mpmath.mpf(-1)),
    "plus_half": ("xi_of_s_plus_half", mpmath.mpf(0)),
}


@dataclass(frozen=True)
class NamedSeries:
    id: str
    series: PowerSeries
    source_table: CoeffTable

    def __post_init__(self):
        if self.id not in SERIES_IDS:
            raise DomainError(f"unknown series id {self.id!r}")

    @property
    def coeffs(self):
        return self.series.coeffs

    def quoted(self) -> list[str]:
        return self.series.quoted()


def tail_tolerance(precision: int):
    return mpmath.mpf(10) ** (-(precision + 5))


def _tail_sum(term, r_start: int, table: CoeffTable, tol, what: str):
    """Sum term(r) for r >= r_start until a term below tol is no larger than its predecessor."""
    acc = []
    prev = None
    for r in range(r_start, table.max_r + 1):
        t = term(r)
        acc.append(t)
        if prev is not None and abs(t) < tol and abs(t) <= abs(prev):
            return mpmath.fsum(acc)
        prev = t
    # Table exhausted: extrapolate the last decay ratio to size the request.
    need = table.max_r + 1
    if len(acc) >= 2 and acc[-2] != 0 and 0 < abs(acc[-1] / acc[-2]) < 1:
        ratio = abs(acc[-1] / acc[-2])
        need = table.max_r + max(1, math.ceil(float(mpmath.log(tol / abs(acc[-1])) / mpmath.log(ratio))))
    raise TruncationError(
        f"{what}: coefficient table depth {table.max_r} too small; need max_r >= {need}",
        required=need)


def recenter_xi(target: str, order: int, table: CoeffTable) -> NamedSeries:
    """Taylor series of xi about another center.

    ``at_zero`` gives xi(s) about 0, ``at_one`` xi(1 + s) about 0,
    ``minus_half`` xi(s - 1/2) about 0 and ``plus_half`` xi(s + 1/2) itself.
    """
    if target not in _RECENTER:
        raise DomainError(f"unknown recentering target {target!r}")
    if order < 0:
        raise DomainError("order must be non-negative")
    ident, shift = _RECENTER[target]
    p = table.precision
    tol = tail_tolerance(p)
    coeffs = []
    with workprec(p):
        for n in range(order + 1):
            r0 = (n + 1) // 2
            if shift == 0:
                if n % 2:
                    coeffs.append(mpmath.mpf(0))
                elif n // 2 > table.max_r:
                    raise TruncationError(f"xi(s + 1/2) to order {n} needs max_r >= {n // 2}",
                                          required=n // 2)
                else:
                    coeffs.append(table[n // 2])
                continue
            coeffs.append(_tail_sum(lambda r: binom(2 * r, n) * table[r] * shift ** (2 * r - n),
                                    r0, table, tol, f"recenter_xi({target}, n={n})"))
    return NamedSeries(ident, PowerSeries(0, "s", tuple(coeffs), p), table)


def combine_plus_minus(order: int, table: CoeffTable) -> tuple[NamedSeries, NamedSeries]:
    """Coefficients of xi_+(s) and xi_-(s) about s = 0.

    With B(r, k) = binom(2r, k) xi_r and sums over r > n:
    E^-_(2n) = -sum B(r, 2n) / 2,  E^-_(2n+1) = sum B(r, 2n+1) / 2,
    E^+_(2n) = xi_n + sum B(r, 2n) / 2,  E^+_(2n+1) = -sum B(r, 2n+1) / 2.
    """
    if order < 0:
        raise DomainError("order must be non-negative")
    p = table.precision
    tol = tail_tolerance(p)
    plus, minus = [], []
    with workprec(p):
        for k in range(order + 1):
            n = k // 2
            tail = _tail_sum(lambda r: binom(2 * r, k) * table[r], n + 1, table, tol,
                             f"combine_plus_minus(k={k})") / 2
            if k % 2 == 0:
                if n > table.max_r:
                    raise TruncationError(f"need max_r >= {n}", required=n)
                plus.append(table[n] + tail)
                minus.append(-tail)
            else:
                plus.append(-tail)
                minus.append(tail)
    mk = lambda ident, cs: NamedSeries(ident, PowerSeries(0, "s", tuple(cs), p), table)
    return mk("xi_plus", plus), mk("xi_minus", minus)


def _xi_h_coeffs(order: int, table: CoeffTable):
    tol = tail_tolerance(table.precision)
    out = []
    for n in range(order + 1):
        head = table[0] if n == 0 else mpmath.mpf(0)
        out.append(head + _tail_sum(lambda r: mobius_pow_coeff(r, n) * table[r], 1, table, tol,
                                    f"w_series(xi_h_of_w, n={n})"))
    return out


def _xi_m_coeffs(order: int, table: CoeffTable):
    if order // 2 > table.max_r:
        raise TruncationError(f"xi_m_of_w to order {order} needs max_r >= {order // 2}",
                              required=order // 2)
    out = [table[0]]
    for n in range(1, order + 1):
        # coefficient of w^(n - 2r) in (1 - w)^(-2r) is binom(n - 1, n - 2r)
        out.append(mpmath.fsum(binom(n - 1, n - 2 * r) * table[r] for r in range(1, n // 2 + 1)))
    return out


def w_series(ident: str, order: int, table: CoeffTable) -> NamedSeries:
    """Series in w about w = 0 of a xi-type function at s = 1/(1 - w).

    ``xi_h_of_w`` is xi(s + 1/2), ``xi_m_of_w`` is xi(s - 1/2) and
    ``xi_plus_of_w`` / ``xi_minus_of_w`` their half-sum / half-difference.
    """
    if ident not in W_IDS:
        raise DomainError(f"unknown w-series id {ident!r}; expected one of {W_IDS}")
    if order < 0:
        raise DomainError("order must be non-negative")
    p = table.precision
    with workprec(p):
        if ident == "xi_h_of_w":
            cs = _xi_h_coeffs(order, table)
        elif ident == "xi_m_of_w":
            cs = _xi_m_coeffs(order, table)
        else:
            h = _xi_h_coeffs(order, table)
            m = _xi_m_coeffs(order, table)
            sign = 1 if ident == "xi_plus_of_w" else -1
            cs = [(a + sign * b) / 2 for a, b in zip(h, m)]
    return NamedSeries(ident, PowerSeries(0, "w", tuple(cs), p), table)


def w_log_series(ident: str, order: int, table: CoeffTable) -> NamedSeries:
    """Logarithm of one of the w-series, e.g. ``log_xi_h_of_w``."""
    if ident not in LOG_W_IDS:
        raise DomainError(f"unknown log series id {ident!r}; expected one of {LOG_W_IDS}")
    base = w_series(ident[len("log_"):], order, table)
    if not base.series[0] > 0:
        raise DomainError(f"{base.id} has a non-positive constant term")
    return NamedSeries(ident, series_log(base.series), table)


def named_series(ident: str, order: int, table: CoeffTable) -> NamedSeries:
    """Build any series by id."""
    for target, (name, _) in _RECENTER.items():
        if name == ident:
            return recenter_xi(target, order, table)
    if ident in ("xi_plus", "xi_minus"):
        plus, minus = combine_plus_minus(order, table)
        return plus if ident == "xi_plus" else minus
    if ident in W_IDS:
        return w_series(ident, order, table)
    if ident in LOG_W_IDS:
        return w_log_series(ident, order, table)
    raise DomainError(f"unknown series id {ident!r}")


# ---------------------------------------------------------------------------
# Convergence diagnostic along the real w axis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GrowthScan:
    id: str
    radius: float                 # estimated radius of convergence about w = 0
    growth: float                 # fitted lim sup |c_n|^(1/n)
    partial_sums: tuple           # (w, order, value) with value an mpf
    verdicts: tuple               # (w, converges)


def coefficient_growth(coeffs, start: int | None = None) -> float:
    """Least-squares slope of log|c_n| against n over the top half of orders, as exp(slope)."""
    n_max = len(coeffs) - 1
    start = n_max // 2 if start is None else start
    pts = [(n, float(mpmath.log(abs(c)))) for n, c in enumerate(coeffs) if n >= max(start, 1) and c != 0]
    if len(pts) < 2:
        raise DomainError("need at least two nonzero coefficients to fit growth")
    mx = sum(n for n, _ in pts) / len(pts)
    my = sum(y for _, y in pts) / len(pts)
    slope = sum((n - mx) * (y - my) for n, y in pts) / sum((n - mx) ** 2 for n, _ in pts)
    return math.exp(slope)


def log_growth_scan(ident: str, w_values, order_schedule, table: CoeffTable) -> GrowthScan:
    """Partial sums of a log w-series on real w for each truncation order.

    A point is judged convergent when |w| is below the coefficient-growth
    radius estimate fitted on the largest order in the schedule.
    """
    orders = sorted(set(int(o) for o in order_schedule))
    if not orders or orders[0] < 0:
        raise DomainError("order_schedule must hold non-negative orders")
    ns = w_log_series(ident, orders[-1], table)
    growth = coefficient_growth(ns.coeffs)
    radius = 1 / growth
    rows, verdicts = [], []
    with workprec(table.precision):
        for w in w_values:
            w = mpmath.mpf(w)
            if not -1 < w < 1:
                raise DomainError(f"scan point w = {w} outside (-1, 1)")
            for o in orders:
                rows.append((w, o, ns.series.truncate(o).evaluate(w)))
            verdicts.append((w, bool(abs(w) < radius)))
    return GrowthScan(ident, radius, growth, tuple(rows), tuple(verdicts))


def series_csv(ns: NamedSeries) -> str:
    """CSV export: a comment header naming the series, then ``n,coefficient`` rows."""
    s = ns.series
    lines = [f"# id={ns.id} center={mpmath.nstr(s.center, 15)} variable={s.variable} precision={s.precision}",
             "n,coefficient"]
    lines += [f"{n},{decimal_string(c, s.precision)}" for n, c in enumerate(s.coeffs)]
    return "\n".join(lines) + "\n"
