"""Approximating log xi(s - 1/2) near w = 1 by a prefactor expansion plus a short Dirichlet sum.

With s = 1/(1 - w) the argument is x = s - 1/2 = (1 + w)/(2(1 - w)) and

    log xi(x) = log[x(x - 1)/2 Gamma(x/2) pi^(-x/2)] + log zeta(x).

The first part is replaced by three terms of its expansion in (1 - w), the
second by the log of the first few terms of the Dirichlet series.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import mpmath

from .apcore import APReal, ap, decimal_string, to_mp, workprec
from .errors import DomainError
from .specfun import log_xi_raw

PREFACTOR_TERMS = 3
REFERENCE_NOTE = "relative errors are taken against log xi(x) and log zeta(x) evaluated directly"


@dataclass(frozen=True)
class ApproxConfig:
    prefactor_order: int = 2
    dirichlet_terms: int = 4
    precision: int = 30

    def __post_init__(self):
        if self.dirichlet_terms < 1:
            raise DomainError("dirichlet_terms must be >= 1")
        if not 0 <= self.prefactor_order < PREFACTOR_TERMS:
            raise DomainError(f"prefactor_order must be in 0..{PREFACTOR_TERMS - 1}")
        if self.precision < 1:
            raise DomainError("precision must be positive")


def _check_w(w, upper_only=False):
    w = to_mp(w)
    if isinstance(w, mpmath.mpc):
        raise DomainError("w must be real")
    if w >= 1 or (not upper_only and w <= 0):
        raise DomainError(f"w = {w} outside (0, 1)")
    return w


def argument(w):
    """x = (1 + w) / (2(1 - w)), the point where xi is evaluated."""
    w = to_mp(w)
    return (1 + w) / (2 * (1 - w))


def prefactor_terms(w, cfg: ApproxConfig | None = None) -> list:
    """The three expansion terms of the gamma/pi prefactor at w (as mpf)."""
    cfg = cfg or ApproxConfig()
    with workprec(cfg.precision):
        w = _check_w(w)
        e = 1 - w
        return [
            mpmath.log(2 * mpmath.e * mpmath.pi * e) / (2 * (w - 1)),
            (mpmath.log(2 * mpmath.pi ** 3) - 5 * mpmath.log(e)) / 4,
            mpmath.mpf(73) / 48 * (w - 1),
        ]


def prefactor_log(w, cfg: ApproxConfig | None = None) -> APReal:
    """Partial sum of the prefactor expansion through term ``cfg.prefactor_order``."""
    cfg = cfg or ApproxConfig()
    with workprec(cfg.precision):
        return ap(mpmath.fsum(prefactor_terms(w, cfg)[: cfg.prefactor_order + 1]), cfg.precision)


def prefactor_direct(w, cfg: ApproxConfig | None = None) -> APReal:
    """log[x(x - 1)/2] + log Gamma(x/2) - (x/2) log pi, computed without overflow."""
    cfg = cfg or ApproxConfig()
    with workprec(cfg.precision):
        x = argument(_check_w(w))
        v = mpmath.log(x * (x - 1) / 2) + mpmath.loggamma(x / 2) - x / 2 * mpmath.log(mpmath.pi)
        return ap(v, cfg.precision)


def dirichlet_log(w, cfg: ApproxConfig | None = None) -> APReal:
    """log of sum_(n <= N) n^(-x) with N = ``cfg.dirichlet_terms``."""
    cfg = cfg or ApproxConfig()
    with workprec(cfg.precision):
        x = argument(_check_w(w, upper_only=True))
        return ap(mpmath.log(mpmath.fsum(mpmath.mpf(n) ** (-x) for n in range(1, cfg.dirichlet_terms + 1))),
                  cfg.precision)


def dirichlet_rel_error(w, cfg: ApproxConfig | None = None) -> APReal:
    """|dirichlet_log - log zeta(x)| / log zeta(x); needs x > 1, i.e. w > 1/3."""
    cfg = cfg or ApproxConfig()
    with workprec(cfg.precision):
        w = _check_w(w)
        x = argument(w)
        if x <= 1:
            raise DomainError(f"log zeta(x) needs x > 1 (w > 1/3); w = {w}")
        ref = mpmath.log(mpmath.zeta(x))
        return ap(abs(dirichlet_log(w, cfg).value - ref) / abs(ref), cfg.precision)


@dataclass(frozen=True)
class CompareRow:
    w: object
    approx: object
    direct: object
    abs_err: object
    rel_err: object


@dataclass(frozen=True)
class CompareTable:
    precision: int
    config: ApproxConfig
    rows: tuple

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# prefactor_order={self.config.prefactor_order} "
                  f"dirichlet_terms={self.config.dirichlet_terms}; {REFERENCE_NOTE}\n")
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["w", "approx", "direct", "abs_err", "rel_err"])
        q = lambda v: decimal_string(v, self.precision)
        for r in self.rows:
            out.writerow([q(r.w), q(r.approx), q(r.direct), q(r.abs_err), q(r.rel_err)])
        return buf.getvalue()


def approx_point(w, cfg: ApproxConfig) -> CompareRow:
    with workprec(cfg.precision):
        w = _check_w(w)
        approx = prefactor_log(w, cfg).value + dirichlet_log(w, cfg).value
        direct = log_xi_raw(argument(w))
        err = abs(approx - direct)
        return CompareRow(w, approx, direct, err, err / abs(direct))


def approx_compare(w_grid, cfg: ApproxConfig | None = None) -> CompareTable:
    """Approximation against log xi(x) on a grid in (0, 1)."""
    cfg = cfg or ApproxConfig()
    return CompareTable(cfg.precision, cfg, tuple(approx_point(w, cfg) for w in w_grid))


DEFAULT_GRID = ("0.5", "0.6", "0.7", "0.8", "0.85", "0.9", "0.95", "0.99")
