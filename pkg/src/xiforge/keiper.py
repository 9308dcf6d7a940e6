"""Sums over inverse powers of the zeta zeros and the Li / tau diagnostics.

The sums sigma_k = sum_rho rho^-k come from the Taylor series of
log(xi(s)/xi(0)) about s = 0: its m-th coefficient is -sigma_m / m.
tau_k and lambda_k follow by binomial transforms of the sigma_j.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import mpmath

from .apcore import PowerSeries, binom, decimal_string, series_log, workprec
from .errors import DomainError, TruncationError
from .expansions import NamedSeries, recenter_xi
from .pustylnikov import CoeffTable

# sum_rho |rho|^-2 as printed alongside the tau bound; it drops a digit of 2*sigma_1
PRINTED_TAU_BOUND = "0.046191479322"


def sigma_from_series(xi_at_zero: NamedSeries | PowerSeries, max_k: int) -> list:
    """sigma_1 .. sigma_max_k from the series of xi(s) about s = 0."""
    s = xi_at_zero.series if isinstance(xi_at_zero, NamedSeries) else xi_at_zero
    if max_k > s.order:
        raise TruncationError(f"sigma up to k = {max_k} needs series order >= {max_k}, have {s.order}",
                              required=max_k)
    if max_k < 0:
        raise DomainError("max_k must be non-negative")
    with workprec(s.precision):
        if abs(s[0] - mpmath.mpf(1) / 2) > mpmath.mpf(10) ** (-s.precision):
            raise DomainError("expected the xi(s) series about s = 0 (constant term 1/2)")
        logs = series_log(s / s[0])
        return [-m * logs[m] for m in range(1, max_k + 1)]


def tau_from_sigma(sigma, max_k: int) -> list:
    """tau_0 .. tau_max_k; sigma[j - 1] holds sigma_j."""
    if len(sigma) < max_k + 1:
        raise DomainError(f"tau up to k = {max_k} needs sigma_1 .. sigma_{max_k + 1}")
    out = [sigma[0]]
    for k in range(1, max_k + 1):
        out.append(mpmath.fsum(binom(k - 1, j - 1) * (-1) ** j * sigma[j] for j in range(1, k + 1)))
    return out


def sigma_from_tau(tau) -> list:
    """Invert :func:`tau_from_sigma`: returns sigma_1 .. sigma_(len(tau))."""
    out = [tau[0]]
    # tau_(n+1) = sum_i binom(n, i) x_i with x_i = (-1)^(i+1) sigma_(i+2)
    for n in range(len(tau) - 1):
        x = mpmath.fsum(binom(n, i) * (-1) ** (n - i) * tau[i + 1] for i in range(n + 1))
        out.append((-1) ** (n + 1) * x)
    return out


def lambda_from_sigma(sigma, max_k: int) -> list:
    """lambda_0 .. lambda_max_k (lambda_0 = 0 exactly)."""
    if len(sigma) < max_k:
        raise DomainError(f"lambda up to k = {max_k} needs sigma_1 .. sigma_{max_k}")
    out = [mpmath.mpf(0)]
    for k in range(1, max_k + 1):
        out.append(mpmath.fsum(mpmath.mpf((-1) ** (j - 1)) / j * binom(k - 1, j - 1) * sigma[j - 1]
                               for j in range(1, k + 1)))
    return out


@dataclass(frozen=True)
class ZeroSumTable:
    max_k: int
    sigma: tuple      # sigma_1 .. sigma_(max_k + 1)
    tau: tuple        # tau_0 .. tau_max_k
    lambda_: tuple    # lambda_0 .. lambda_max_k
    precision: int

    def __post_init__(self):
        if self.lambda_[0] != 0:
            raise DomainError("lambda_0 must be exactly zero")
        if self.tau[0] != self.sigma[0]:
            raise DomainError("tau_0 must equal sigma_1")


def zero_sums(max_k: int, table: CoeffTable, order: int | None = None) -> ZeroSumTable:
    """Assemble sigma, tau and lambda up to ``max_k`` from a coefficient table."""
    if max_k < 0:
        raise DomainError("max_k must be non-negative")
    order = max(order or 0, max_k + 1)
    series = recenter_xi("at_zero", order, table)
    with workprec(table.precision):
        sigma = sigma_from_series(series, max_k + 1)
        tau = tau_from_sigma(sigma, max_k)
        lam = lambda_from_sigma(sigma, max_k)
    return ZeroSumTable(max_k, tuple(sigma), tuple(tau), tuple(lam), table.precision)


@dataclass
class CriterionReport:
    precision: int
    bound: object                         # 2 sigma_1
    printed_bound: str = PRINTED_TAU_BOUND
    violations: list = field(default_factory=list)
    lambda_margin: list = field(default_factory=list)
    tau_margin: list = field(default_factory=list)
    sums: ZeroSumTable | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        p = self.precision
        q = lambda v: decimal_string(v, p)
        t = self.sums
        return {
            "precision": p,
            "sigma": [q(v) for v in t.sigma[: t.max_k]] if t else [],
            "tau": [q(v) for v in t.tau] if t else [],
            "lambda": [q(v) for v in t.lambda_] if t else [],
            "violations": self.violations,
            "bound": q(self.bound),
            "printed_bound": self.printed_bound,
            "bound_note": "bound is 2*sigma_1; the printed constant drops a digit of it (0.0461914[1]79322)",
            "lambda_margin": [q(v) for v in self.lambda_margin],
            "tau_margin": [q(v) for v in self.tau_margin],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def criterion_report(table: ZeroSumTable) -> CriterionReport:
    """Flag lambda_k < 0 (Li) and |tau_k| >= 2 sigma_1 for every computed k.

    Margins are lambda_k itself and 2 sigma_1 - |tau_k|; lambda_0 = 0 is
    the definition, not a violation.
    """
    with workprec(table.precision):
        bound = 2 * table.sigma[0]
        rep = CriterionReport(table.precision, bound, sums=table)
        for k, lam in enumerate(table.lambda_):
            rep.lambda_margin.append(lam)
            if k >= 1 and lam < 0:
                rep.violations.append({"kind": "li", "k": k, "value": decimal_string(lam, table.precision)})
        for k, tau in enumerate(table.tau):
            margin = bound - abs(tau)
            rep.tau_margin.append(margin)
            if margin <= 0:
                rep.violations.append({"kind": "tau_bound", "k": k, "value": decimal_string(tau, table.precision)})
    return rep


def exception_order_estimate(T):
    """Rough order m beyond which an off-line zero at height > T would show in lambda_m: 2 T^2."""
    T = mpmath.mpf(T)
    if T <= 0:
        raise DomainError("T must be positive")
    return 2 * T * T
