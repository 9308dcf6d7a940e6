"""Taylor coefficients xi_r of xi(s + 1/2) = sum_r xi_r s^(2r).

The main route is the theta-kernel integral

    xi_r = 2^-(2r+2) / (2r)! * int_0^inf u^(2r-2) [32 r (2r-1) - u^2] e^(u/4) omega(e^u) du

(the x = e^u form of the integral over [1, inf)), evaluated by composite
Gauss-Legendre.  xi_0 comes from the completed zeta directly.  An
independent oracle fits Taylor coefficients of the completed zeta on a
circle about s = 1/2.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import mpmath

from .apcore import APReal, decimal_string, working_dps, workprec
from .errors import AccuracyLossError, CacheFormatError, DomainError, InvariantViolation, XiForgeError
from .quadrature import composite_rule
from .specfun import SpecFunContext, log_xi_raw, omega_sum, omega_terms, xi_raw

PROVENANCES = ("integral", "oracle", "file")
CACHE_HEADER = "# xi-coeffs v1 precision="


@dataclass(frozen=True)
class CoeffTable:
    """xi_0 .. xi_max_r at ``precision`` digits; positivity is enforced."""

    precision: int
    values: tuple
    provenance: str = "integral"

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise DomainError(f"unknown provenance {self.provenance!r}")
        if not self.values:
            raise DomainError("a coefficient table needs at least xi_0")
        # Entries are held rounded to `precision` digits, exactly what the
        # cache file stores, so a reloaded table equals a fresh one.
        with workprec(self.precision):
            vals = tuple(mpmath.mpf(decimal_string(mpmath.mpf(v), self.precision)) for v in self.values)
        object.__setattr__(self, "values", vals)
        for r, v in enumerate(vals):
            if not v > 0:
                raise InvariantViolation(f"xi_{r} = {mpmath.nstr(v, 10)} is not positive", index=r)

    @property
    def max_r(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, r):
        return self.values[r]

    def coeff(self, r: int) -> APReal:
        return APReal(self.values[r], self.precision)

    def quoted(self) -> list[str]:
        return [decimal_string(v, self.precision) for v in self.values]

    def decay_ratios(self) -> list:
        """xi_{r+1} / xi_r for r >= 1."""
        with workprec(self.precision):
            return [self.values[r + 1] / self.values[r] for r in range(1, self.max_r)]


# ---------------------------------------------------------------------------
# Integral route
# ---------------------------------------------------------------------------


def _log_integrand_bound(u: float, r: int) -> float:
    m = 2 * r
    return ((m - 2) * math.log(u) + math.log(16 * m * (m - 1) + u * u)
            + u / 4 + math.log(2.0) - math.pi * math.exp(u))


def upper_limit(r: int, digits: int) -> float:
    """Cut-off U beyond which the integrand is 10**-(digits+5) below its peak.

    Uses omega(e^u) < 2 exp(-pi e^u).  U is rounded up to a multiple of 1/8.
    """
    grid = [k / 64 for k in range(1, 64 * 12)]
    logs = [_log_integrand_bound(u, r) for u in grid]
    k_peak = max(range(len(grid)), key=logs.__getitem__)
    floor = logs[k_peak] - (digits + 5) * math.log(10)
    for k in range(k_peak, len(grid)):
        if logs[k] < floor:
            return math.ceil(grid[k] * 8) / 8
    raise AccuracyLossError(f"no quadrature cut-off found for r = {r}", achieved_digits=0)


def _bucket(r: int) -> int:
    """Largest r sharing a quadrature grid with r: buckets (2^(k-1), 2^k], min 8."""
    return max(8, 1 << (r - 1).bit_length())


def _grid_params(r_hi: int, precision: int, panels=None, nodes=None):
    dps = working_dps(precision)
    return dict(
        U=upper_limit(r_hi, dps),
        panels=panels or max(8, r_hi),
        nodes=nodes or max(10, math.ceil(dps / 2)),
        dps=dps,
    )


def _integral_block(rs, precision: int, panels=None, nodes=None):
    """xi_r for every r in ``rs`` (all r >= 1, one bucket) on one shared grid."""
    r_hi = _bucket(max(rs))
    g = _grid_params(r_hi, precision, panels, nodes)
    with mpmath.workdps(g["dps"]):
        rule = composite_rule(0, g["U"], g["panels"], g["nodes"], g["dps"])
        us, base = [], []
        for u, w in rule:
            x = mpmath.exp(u)
            us.append(u)
            base.append(w * mpmath.exp(u / 4) * omega_sum(x, omega_terms(x, g["dps"])))
        u2 = [u * u for u in us]
        out = {}
        r = 1
        powers = [mpmath.mpf(1)] * len(us)   # u^(2r-2)
        for target in sorted(rs):
            while r < target:
                powers = [p * q for p, q in zip(powers, u2)]
                r += 1
            m = 2 * r
            k = 16 * m * (m - 1)
            integral = mpmath.fsum(b * p * (k - q) for b, p, q in zip(base, powers, u2))
            out[r] = integral / (mpmath.mpf(2) ** (m + 2) * mpmath.factorial(m))
    return out


def xi0_from_integral(ctx: SpecFunContext | None = None) -> APReal:
    """xi_0 = 1/2 - (1/4) int_0^inf e^(u/4) omega(e^u) du, a cross-check of xi(1/2)."""
    ctx = ctx or SpecFunContext()
    g = _grid_params(8, ctx.precision)
    with mpmath.workdps(g["dps"]):
        rule = composite_rule(0, g["U"], g["panels"], g["nodes"], g["dps"])
        acc = mpmath.fsum(w * mpmath.exp(u / 4) * omega_sum(mpmath.exp(u), omega_terms(mpmath.exp(u), g["dps"]))
                          for u, w in rule)
        return APReal(mpmath.mpf(1) / 2 - acc / 4, ctx.precision)


def _xi0(precision: int):
    with workprec(precision):
        return xi_raw(mpmath.mpf(1) / 2)


def xi_coeff(r: int, ctx: SpecFunContext | None = None, *, panels=None, nodes=None) -> APReal:
    """The coefficient of s^(2r) in xi(s + 1/2).

    ``panels`` and ``nodes`` override the quadrature grid (default: panel
    count max(8, bucket(r)), ceil(dps/2) nodes per panel).
    """
    if r < 0:
        raise DomainError(f"xi_coeff needs r >= 0, got {r}")
    ctx = ctx or SpecFunContext()
    if r == 0:
        return APReal(_xi0(ctx.precision), ctx.precision)
    val = _integral_block([r], ctx.precision, panels, nodes)[r]
    return APReal(val, ctx.precision)


def _block_job(args):
    rs, precision = args
    vals = _integral_block(rs, precision)
    with workprec(precision):
        return {r: decimal_string(v, working_dps(precision)) for r, v in vals.items()}


def _annotated(rs, call):
    try:
        return call()
    except XiForgeError as exc:
        raise XiForgeError(f"xi_coeff computation failed for r in {rs[0]}..{rs[-1]}: {exc}") from exc


def xi_coeff_table(max_r: int, ctx: SpecFunContext | None = None, *, start: CoeffTable | None = None,
                   workers: int = 1) -> CoeffTable:
    """Table of xi_0 .. xi_max_r.

    Coefficients are grouped in buckets that share a quadrature grid; a
    bucket's grid depends only on the bucket, so a value never depends on
    ``max_r`` or on which entries ``start`` already supplies.  With
    ``workers > 1`` buckets run in separate processes; results are
    assembled by index and are identical to the serial run.
    """
    if max_r < 0:
        raise DomainError("max_r must be non-negative")
    ctx = ctx or SpecFunContext()
    known = []
    if start is not None:
        if start.precision != ctx.precision:
            raise DomainError(f"start table has precision {start.precision}, need {ctx.precision}")
        known = list(start.values[: max_r + 1])
    if not known:
        known = [_xi0(ctx.precision)]
    missing = list(range(len(known), max_r + 1))
    buckets: dict[int, list[int]] = {}
    for r in missing:
        buckets.setdefault(_bucket(r), []).append(r)
    jobs = [(rs, ctx.precision) for _, rs in sorted(buckets.items())]
    merged = {}
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [(rs, pool.submit(_block_job, (rs, p))) for rs, p in jobs]
            for rs, fut in futures:
                merged.update(_annotated(rs, fut.result))
    else:
        for rs, p in jobs:
            merged.update(_annotated(rs, lambda: _block_job((rs, p))))
    with workprec(ctx.precision):
        values = known + [mpmath.mpf(merged[r]) for r in missing]
    table = CoeffTable(ctx.precision, tuple(values), "integral")
    return table


# ---------------------------------------------------------------------------
# Independent oracle: Cauchy-integral Taylor fit of xi about s = 1/2
# ---------------------------------------------------------------------------


def _best_radius(n: int) -> float:
    """Radius minimising xi(1/2 + h) / h^n, which bounds the rounding loss."""
    if n == 0:
        return 1.0
    with mpmath.workdps(15):
        cands = [0.5 * 1.05 ** k for k in range(120)]
        return min(cands, key=lambda h: float(log_xi_raw(mpmath.mpf(0.5) + h)) - n * math.log(h))


def _fit(n: int, h, points: int):
    """Trapezoidal Cauchy estimate of the n-th Taylor coefficient on radius h."""
    total = mpmath.mpf(0)
    half = mpmath.mpf(1) / 2
    for j in range(points // 2 + 1):
        theta = 2 * mpmath.pi * j / points
        z = h * mpmath.expjpi(2 * mpmath.mpf(j) / points)
        f = xi_raw(half + z)
        term = mpmath.re(f * mpmath.expj(-n * theta))
        # conjugate symmetry: node j and node points - j contribute equally
        weight = 1 if (j == 0 or 2 * j == points) else 2
        total += weight * term
    return total / (points * mpmath.power(h, n))


def oracle_taylor(n: int, ctx: SpecFunContext | None = None, *, radius=None, points=None,
                  max_points: int = 4096):
    """(estimate, absolute error estimate) of the n-th Taylor coefficient of xi(1/2 + s).

    The point count doubles from max(4n + 8, 32) until two successive rules
    agree; the error estimate adds that difference to the rounding bound
    10^-dps xi(1/2 + h) / h^n.
    """
    ctx = ctx or SpecFunContext()
    dps = working_dps(ctx.precision)
    with mpmath.workdps(dps):
        h = mpmath.mpf(radius if radius is not None else _best_radius(n))
        m = points or max(4 * n + 8, 32)
        m += (-m) % 4
        rounding = mpmath.mpf(10) ** (-dps) * xi_raw(mpmath.mpf(1) / 2 + h) / mpmath.power(h, n) * m
        prev = _fit(n, h, m)
        while True:
            m2 = 2 * m
            cur = _fit(n, h, m2)
            diff = abs(cur - prev)
            if points is not None or diff <= rounding or m2 >= max_points:
                return cur, diff + rounding
            prev, m = cur, m2


def xi_coeff_oracle(r: int, ctx: SpecFunContext | None = None, *, radius=None, points=None) -> APReal:
    """xi_r from the Taylor fit of the completed zeta; independent of the theta integral.

    Raises AccuracyLossError (with the achieved relative digits) when the fit
    cannot deliver ``ctx.precision`` digits.
    """
    if r < 0:
        raise DomainError(f"xi_coeff_oracle needs r >= 0, got {r}")
    ctx = ctx or SpecFunContext()
    if r == 0:
        return APReal(_xi0(ctx.precision), ctx.precision)
    value, err = oracle_taylor(2 * r, ctx, radius=radius, points=points)
    with mpmath.workdps(working_dps(ctx.precision)):
        achieved = float(-mpmath.log10(err / abs(value))) if err > 0 else float(working_dps(ctx.precision))
    if achieved < ctx.precision:
        raise AccuracyLossError(
            f"oracle for xi_{r} reached only {achieved:.1f} of {ctx.precision} digits",
            achieved_digits=achieved)
    return APReal(value, ctx.precision)


def oracle_table(max_r: int, ctx: SpecFunContext | None = None) -> CoeffTable:
    ctx = ctx or SpecFunContext()
    vals = [xi_coeff_oracle(r, ctx).value for r in range(max_r + 1)]
    return CoeffTable(ctx.precision, tuple(vals), "oracle")


# ---------------------------------------------------------------------------
# Cache file
# ---------------------------------------------------------------------------


def format_table(t: CoeffTable) -> str:
    lines = [f"{CACHE_HEADER}{t.precision}"]
    lines += [f"{r},{s}" for r, s in enumerate(t.quoted())]
    return "\n".join(lines) + "\n"


def save_table(t: CoeffTable, path) -> None:
    """Write ``t`` in the cache format (atomically via a temp file)."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_table(t))
    os.replace(tmp, path)


def append_table(t: CoeffTable, path) -> int:
    """Append the entries of ``t`` beyond those already in ``path``; returns count."""
    path = Path(path)
    if not path.exists():
        save_table(t, path)
        return len(t)
    old = load_table(path)
    if old.precision != t.precision:
        raise CacheFormatError(f"cache precision {old.precision} differs from {t.precision}")
    lines = [f"{r},{s}" for r, s in enumerate(t.quoted()) if r > old.max_r]
    if lines:
        with open(path, "a", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    return len(lines)


def parse_table(text: str) -> CoeffTable:
    lines = text.splitlines()
    if not lines or not lines[0].startswith(CACHE_HEADER):
        raise CacheFormatError(f"missing header {CACHE_HEADER!r}", line=1)
    try:
        precision = int(lines[0][len(CACHE_HEADER):].strip())
    except ValueError:
        raise CacheFormatError("bad precision in header", line=1) from None
    if precision <= 0:
        raise CacheFormatError("precision must be positive", line=1)
    values = []
    with workprec(precision):
        for lineno, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise CacheFormatError(f"expected 'r,value', got {line!r}", line=lineno)
            try:
                r = int(parts[0])
                if not parts[1].strip() or any(c not in "0123456789+-.eE" for c in parts[1].strip()):
                    raise ValueError
                v = mpmath.mpf(parts[1].strip())
            except ValueError:
                raise CacheFormatError(f"unparsable entry {line!r}", line=lineno) from None
            if r != len(values):
                raise CacheFormatError(f"expected r = {len(values)}, got {r}", line=lineno)
            if not mpmath.isfinite(v):
                raise CacheFormatError(f"non-finite value for r = {r}", line=lineno)
            if not v > 0:
                raise InvariantViolation(f"cache entry xi_{r} = {parts[1].strip()} is not positive", index=r)
            values.append(v)
    if not values:
        raise CacheFormatError("cache holds no coefficients", line=len(lines))
    return CoeffTable(precision, tuple(values), "file")


def load_table(path) -> CoeffTable:
    """Read a cache file; validates format and positivity."""
    return parse_table(Path(path).read_text(encoding="utf-8"))
