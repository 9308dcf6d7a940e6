"""Mobius maps taking vertical lines in s to unit circles, and real-axis scans.

* ``w_map``:  w = 1 - 1/s, sends Re(s) = 1/2 to |w| = 1
* ``wh_map``: w_h = (s - 1/2)/(s + 1/2), sends Re(s) = 0 to |w_h| = 1
* ``wm_map``: w_m = (s - 3/2)/(s - 1/2), sends Re(s) = 1 to |w_m| = 1
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from .apcore import ap, decimal_string, is_complex, to_mp, workprec
from .errors import DomainError, PoleError
from .specfun import SpecFunContext, xi_raw


@dataclass(frozen=True)
class MobiusMap:
    id: str
    forward: Callable
    inverse: Callable
    forward_pole: object
    inverse_pole: object


_half = Fraction(1, 2)

MAPS = {
    "w_map": MobiusMap("w_map", lambda s: 1 - 1 / s, lambda w: 1 / (1 - w), 0, 1),
    "wh_map": MobiusMap("wh_map", lambda s: (s - _mp_half()) / (s + _mp_half()),
                        lambda w: -_mp_half() + 1 / (1 - w), -_half, 1),
    "wm_map": MobiusMap("wm_map", lambda s: (s - 3 * _mp_half()) / (s - _mp_half()),
                        lambda w: _mp_half() + 1 / (1 - w), _half, 1),
}


def _mp_half():
    return mpmath.mpf(1) / 2


def get_map(map_id) -> MobiusMap:
    if isinstance(map_id, MobiusMap):
        return map_id
    try:
        return MAPS[map_id]
    except KeyError:
        raise DomainError(f"unknown map {map_id!r}; expected one of {sorted(MAPS)}") from None


def apply(map_id, direction: str, z, ctx: SpecFunContext | None = None):
    """Image of z under a map (``direction`` is ``forward`` or ``inverse``).

    Real input gives an APReal, complex input an APComplex.  The precision
    is that of an AP input, else ``ctx.precision``.
    """
    m = get_map(map_id)
    if direction not in ("forward", "inverse"):
        raise DomainError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    precision = getattr(z, "precision", None) or (ctx or SpecFunContext()).precision
    with workprec(precision):
        x = to_mp(z)
        pole = m.forward_pole if direction == "forward" else m.inverse_pole
        if x == to_mp(pole):
            raise PoleError(f"{m.id} {direction} has a pole at {pole}")
        f = m.forward if direction == "forward" else m.inverse
        return ap(f(x), precision)


def chain_relation(w, ctx: SpecFunContext | None = None):
    """(w_h, w_m) for a given w: w_h = (1 + w)/(3 - w), w_m = (3w - 1)/(w + 1)."""
    precision = getattr(w, "precision", None) or (ctx or SpecFunContext()).precision
    with workprec(precision):
        x = to_mp(w)
        if x == 3:
            raise PoleError("w_h = (1 + w)/(3 - w) has a pole at w = 3")
        if x == -1:
            raise PoleError("w_m = (3w - 1)/(w + 1) has a pole at w = -1")
        return ap((1 + x) / (3 - x), precision), ap((3 * x - 1) / (x + 1), precision)


def chain_inverse(w_h, w_m, ctx: SpecFunContext | None = None):
    """w recovered from each of w_h and w_m (both should agree)."""
    precision = (ctx or SpecFunContext()).precision
    with workprec(precision):
        a, b = to_mp(w_h), to_mp(w_m)
        return ap((3 * a - 1) / (a + 1), precision), ap((1 + b) / (3 - b), precision)


def fixed_point_residual(w) -> object:
    """w (3 - w) - (1 + w) = -(w - 1)^2: the fixed-point equation of the w -> w_h map."""
    w = to_mp(w)
    return w * (3 - w) - (1 + w)


# ---------------------------------------------------------------------------
# Key points and inequality scans
# ---------------------------------------------------------------------------

TABLE1_W = (Fraction(-1), Fraction(-1, 3), Fraction(0), Fraction(1, 2), Fraction(9, 10), Fraction(19, 20))


@dataclass(frozen=True)
class Table1Row:
    w: Fraction
    s: Fraction
    xi_plus_half: object     # xi(s + 1/2)
    xi_minus_half: object    # xi(s - 1/2)


def table1(ctx: SpecFunContext | None = None) -> list[Table1Row]:
    """w, s = 1/(1 - w), xi(s + 1/2), xi(s - 1/2) at the six key points."""
    ctx = ctx or SpecFunContext()
    rows = []
    with workprec(ctx.precision):
        for w in TABLE1_W:
            s = 1 / (1 - w)
            sm = to_mp(s)
            rows.append(Table1Row(w, s, xi_raw(sm + _mp_half()), xi_raw(sm - _mp_half())))
    return rows


def table1_csv(rows, precision: int) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["w", "s", "xi_s_plus_half", "xi_s_minus_half"])
    for r in rows:
        out.writerow([str(r.w), str(r.s), decimal_string(r.xi_plus_half, precision),
                      decimal_string(r.xi_minus_half, precision)])
    return buf.getvalue()


def chebyshev_grid(n: int = 25, half_width="0.95", precision: int = 30) -> list:
    """n Chebyshev points of the first kind on [-half_width, half_width], ascending.

    The end points are included by scaling the extreme nodes to +-half_width.
    """
    if n < 2:
        raise DomainError("need at least two grid points")
    with workprec(precision):
        hw = to_mp(half_width)
        if not 0 < hw < 1:
            raise DomainError(f"half_width must lie in (0, 1), got {half_width}")
        nodes = [mpmath.cos((2 * k + 1) * mpmath.pi / (2 * n)) for k in range(n)]
        scale = hw / nodes[0]
        grid = sorted(x * scale for x in nodes)
        # the middle node of an odd grid is zero up to rounding
        return [mpmath.mpf(0) if abs(x) < mpmath.mpf(10) ** (-precision) else x for x in grid]


@dataclass(frozen=True)
class ScanRow:
    w: object
    s: object
    xi_h: object       # xi(s + 1/2)
    xi_plus: object
    xi_minus: object
    xi_m: object       # xi(s - 1/2)
    chain1_ok: bool    # xi_h > xi_plus > xi_minus > 0
    chain2_ok: bool    # xi_plus > xi_m > 0
    margin: object     # smallest gap in either chain


@dataclass(frozen=True)
class ScanReport:
    precision: int
    rows: tuple

    @property
    def violations(self) -> list:
        return [r for r in self.rows if not (r.chain1_ok and r.chain2_ok)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["w", "s", "xi_h", "xi_plus", "xi_minus", "xi_m", "chain1_ok", "chain2_ok"])
        q = lambda v: decimal_string(v, self.precision)
        for r in self.rows:
            out.writerow([q(r.w), q(r.s), q(r.xi_h), q(r.xi_plus), q(r.xi_minus), q(r.xi_m),
                          str(r.chain1_ok).lower(), str(r.chain2_ok).lower()])
        return buf.getvalue()


def scan_point(w, precision: int) -> ScanRow:
    with workprec(precision):
        w = to_mp(w)
        if is_complex(w):
            raise DomainError("scan points must be real")
        if w >= 1:
            raise DomainError(f"scan point w = {w} must be < 1")
        s = 1 / (1 - w)
        h = xi_raw(s + _mp_half())
        m = xi_raw(s - _mp_half())
        plus, minus = (h + m) / 2, (h - m) / 2
        gaps = [h - plus, plus - minus, minus, plus - m, m]
        return ScanRow(w, s, h, plus, minus, m,
                       bool(h > plus > minus > 0), bool(plus > m > 0), min(gaps))


def inequality_scan(w_grid=None, ctx: SpecFunContext | None = None) -> ScanReport:
    """Check xi_h > xi_+ > xi_- > 0 and xi_+ > xi_m > 0 at s = 1/(1 - w) on a real grid.

    Violations are reported in the rows, never raised.
    """
    ctx = ctx or SpecFunContext()
    grid = chebyshev_grid(precision=ctx.precision) if w_grid is None else list(w_grid)
    return ScanReport(ctx.precision, tuple(scan_point(w, ctx.precision) for w in grid))
