"""Special functions: the theta sum, classical functions, and the completed zeta.

Gamma, polygamma, zeta and Stieltjes constants are delegated to mpmath; the
contract here is the precision of the result, not the algorithm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .apcore import APReal, ap, to_mp, working_dps, workprec
from .errors import DomainError, PoleError


@dataclass(frozen=True)
class SpecFunContext:
    """Working context: quoted precision and an optional theta-sum cap.

    ``omega_truncation=None`` picks the number of theta terms adaptively so
    that the first omitted term is below ``10**-(precision + 10)``.
    """

    precision: int = 30
    omega_truncation: int | None = None

    def __post_init__(self):
        if self.precision <= 0:
            raise DomainError("precision must be positive")
        if self.omega_truncation is not None and self.omega_truncation < 1:
            raise DomainError("omega_truncation must be a positive integer")

    @property
    def dps(self) -> int:
        return working_dps(self.precision)

    def with_precision(self, precision: int) -> "SpecFunContext":
        return SpecFunContext(precision, self.omega_truncation)


def omega_terms(x, digits: int) -> int:
    """Smallest N with exp(-pi (N+1)^2 x) < 10**-digits."""
    x = float(x)
    need = digits * math.log(10) / (math.pi * x)
    return max(1, math.ceil(math.sqrt(need)))


def omega_sum(x, nterms: int):
    """Partial theta sum ``sum_{n=1}^{nterms} exp(-pi n^2 x)`` at current precision.

    Uses the recurrence exp(-pi (n+1)^2 x) = exp(-pi n^2 x) q^(2n+1), q = exp(-pi x).
    """
    q = mpmath.exp(-mpmath.pi * x)
    q2 = q * q
    term = q
    ratio = q * q2
    total = term
    for _ in range(1, nterms):
        term *= ratio
        ratio *= q2
        total += term
    return total


def omega(x, ctx: SpecFunContext) -> APReal:
    """The theta sum ``omega(x) = sum_{n>=1} exp(-pi n^2 x)`` for x > 0."""
    with workprec(ctx.precision):
        x = to_mp(x)
        if x <= 0:
            raise DomainError(f"omega is defined for x > 0, got {x}")
        n = ctx.omega_truncation or omega_terms(x, ctx.dps)
        return APReal(omega_sum(x, n), ctx.precision)


# ---------------------------------------------------------------------------
# Classical functions
# ---------------------------------------------------------------------------

CLASSICAL = ("gamma", "log_gamma", "psi0", "psi1", "zeta", "zeta_deriv_k", "stieltjes_k")


def _is_nonpositive_integer(z) -> bool:
    z = mpmath.mpc(z)
    return z.imag == 0 and z.real <= 0 and z.real == mpmath.floor(z.real)


def _classical_raw(fn: str, z, k: int):
    if fn in ("gamma", "log_gamma", "psi0", "psi1"):
        if _is_nonpositive_integer(z):
            raise PoleError(f"{fn} has a pole at {z}")
        if fn == "gamma":
            return mpmath.gamma(z)
        if fn == "log_gamma":
            return mpmath.loggamma(z)
        return mpmath.psi(0 if fn == "psi0" else 1, z)
    if fn in ("zeta", "zeta_deriv_k"):
        if z == 1:
            raise PoleError("zeta has a pole at s = 1")
        order = 0 if fn == "zeta" else k
        if order < 0:
            raise DomainError("derivative order must be non-negative")
        return mpmath.zeta(z, 1, order)
    if fn == "stieltjes_k":
        if k < 0:
            raise DomainError("Stieltjes index must be non-negative")
        if _is_nonpositive_integer(z):
            raise PoleError(f"generalized Stieltjes constant undefined at a = {z}")
        return mpmath.stieltjes(k, z)
    raise DomainError(f"unknown classical function {fn!r}; expected one of {CLASSICAL}")


def classical(fn: str, arg=1, k: int = 0, ctx: SpecFunContext | None = None):
    """Evaluate a classical special function at ``ctx.precision`` digits.

    ``fn`` is one of ``gamma, log_gamma, psi0, psi1, zeta, zeta_deriv_k,
    stieltjes_k``.  ``k`` is the derivative order for ``zeta_deriv_k`` and the
    index for ``stieltjes_k`` (whose ``arg`` is the shift ``a``, 1 for the
    ordinary constants).  Real arguments give an APReal, complex an APComplex.
    """
    ctx = ctx or SpecFunContext()
    with workprec(ctx.precision):
        z = to_mp(arg)
        return ap(_classical_raw(fn, z, k), ctx.precision)


# ---------------------------------------------------------------------------
# Completed zeta
# ---------------------------------------------------------------------------


def _s_minus_one_zeta(s):
    """(s - 1) zeta(s), with the removable singularity at s = 1 filled in."""
    d = s - 1
    if d == 0:
        return mpmath.mpf(1)
    if abs(d) < mpmath.mpf(10) ** (-(mpmath.mp.dps // 2 + 1)):
        # Laurent expansion: (s-1) zeta(s) = 1 + gamma (s-1) + O((s-1)^2)
        return 1 + mpmath.euler * d
    return d * mpmath.zeta(s)


def xi_raw(s):
    """Completed zeta at the current mpmath precision.

    Computes (s-1) zeta(s) Gamma(1 + s/2) pi^(-s/2), which equals
    s(s-1)/2 pi^(-s/2) Gamma(s/2) zeta(s) and is regular at s = 0 and 1.
    Arguments left of the critical line are reflected through s -> 1 - s.
    """
    if mpmath.re(s) < 0.5:
        s = 1 - s
    v = _s_minus_one_zeta(s) * mpmath.gamma(1 + s / 2) * mpmath.power(mpmath.pi, -s / 2)
    if isinstance(v, mpmath.mpc) and not isinstance(s, mpmath.mpc):
        v = v.real
    return v


def xi_direct(s, ctx: SpecFunContext | None = None):
    """The completed zeta xi(s); real input gives APReal, complex APComplex."""
    ctx = ctx or SpecFunContext()
    with workprec(ctx.precision):
        z = to_mp(s)
        v = xi_raw(z)
        if isinstance(z, mpmath.mpc) and not isinstance(v, mpmath.mpc):
            v = mpmath.mpc(v)
        return ap(v, ctx.precision)


def log_xi_raw(s):
    """log xi(s) for real s, via log-gamma so large s never overflows."""
    if s < 0.5:
        s = 1 - s
    return (mpmath.log(_s_minus_one_zeta(s)) + mpmath.loggamma(1 + s / 2)
            - s / 2 * mpmath.log(mpmath.pi))


# ---------------------------------------------------------------------------
# Closed-form low-order coefficients
# ---------------------------------------------------------------------------

CLOSED_FORMS = ("C0", "C1", "C2", "D0", "D1", "F0", "F1", "F2")


def _closed_form_raw(ident: str):
    pi = mpmath.pi
    lp = mpmath.log(pi)
    quarter = mpmath.mpf(1) / 4
    half = mpmath.mpf(1) / 2
    qrt_pi = mpmath.root(pi, 4)
    euler = mpmath.euler
    l4p = mpmath.log(4 * pi)
    if ident.startswith("C"):
        z0 = mpmath.zeta(half)
        g = mpmath.gamma(quarter)
        p0 = mpmath.psi(0, quarter)
        if ident == "C0":
            return -z0 * g / (8 * qrt_pi)
        if ident == "C1":
            return g * (-2 * mpmath.zeta(half, 1, 1) + z0 * lp - z0 * p0) / (16 * qrt_pi)
        p1 = mpmath.psi(1, quarter)
        return g * (z0 * (32 + lp**2 + p0**2 - p1 - 2 * lp * p0)
                    - 4 * mpmath.zeta(half, 1, 2)) / (64 * qrt_pi)
    if ident.startswith("D"):
        zm = mpmath.zeta(-half)
        g = mpmath.gamma(-quarter)
        if ident == "D0":
            return 3 * qrt_pi * g * zm / 8
        return qrt_pi * g * (-16 * zm - 3 * lp * zm + 3 * mpmath.psi(0, -quarter) * zm
                             + 6 * mpmath.zeta(-half, 1, 1)) / 16
    if ident == "F0":
        return half
    if ident == "F1":
        return (-2 - euler + l4p) / 4
    # F2 needs the first Stieltjes constant.
    gamma1 = mpmath.stieltjes(1)
    return (8 * euler - 6 * euler**2 + pi**2 + 2 * l4p * (-4 - 2 * euler + l4p) - 16 * gamma1) / 32


def closed_form_coeff(ident: str, ctx: SpecFunContext | None = None) -> APReal:
    """Closed-form low-order Taylor coefficient of xi about s = 1/2, -1/2 or 0.

    ``C*`` expand xi(s + 1/2), ``D*`` expand xi(s - 1/2), ``F*`` expand xi(s),
    all about s = 0.
    """
    if ident not in CLOSED_FORMS:
        raise DomainError(f"unknown closed form {ident!r}; expected one of {CLOSED_FORMS}")
    ctx = ctx or SpecFunContext()
    with workprec(ctx.precision):
        return APReal(_closed_form_raw(ident), ctx.precision)


def zeta_half_derivative_residual(ctx: SpecFunContext | None = None) -> APReal:
    """zeta'(1/2) - zeta(1/2) [log pi - psi(1/4)] / 2, which vanishes identically."""
    ctx = ctx or SpecFunContext()
    with workprec(ctx.precision):
        half = mpmath.mpf(1) / 2
        r = mpmath.zeta(half, 1, 1) - mpmath.zeta(half) * (
            mpmath.log(mpmath.pi) - mpmath.psi(0, mpmath.mpf(1) / 4)) / 2
        return APReal(r, ctx.precision)
