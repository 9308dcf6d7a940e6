"""Arbitrary-precision scalars and truncated power series.

All numerics in xiforge run on :mod:`mpmath` values.  A *precision* is a
number of decimal digits that results are quoted to; arithmetic runs with
``GUARD_DIGITS`` extra digits so that quoted digits are correctly rounded.

:class:`APReal` and :class:`APComplex` tag an mpmath value with its quoted
precision.  :class:`PowerSeries` is an immutable truncated Taylor series
``c0 + c1*(z - center) + ... + cN*(z - center)**N``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
from mpmath.libmp import to_str

from .errors import DomainError

GUARD_DIGITS = 10

VARIABLES = frozenset({"s", "w", "w_h", "w_m", "one_minus_s_inv"})


def working_dps(precision: int) -> int:
    """Decimal digits used internally for a quoted precision."""
    return int(precision) + GUARD_DIGITS


def workprec(precision: int):
    """Context manager running mpmath at ``precision + GUARD_DIGITS`` digits."""
    return mpmath.workdps(working_dps(precision))


def to_mp(x):
    """Convert ``x`` to an mpmath number at the current working precision.

    Accepts ints, floats, strings, Fractions, mpmath numbers and the AP
    wrappers.  Complex inputs with a zero imaginary part stay complex.
    """
    if isinstance(x, (APReal, APComplex)):
        x = x.value
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        # already exact; re-wrapping would round to the ambient precision
        return x
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, (complex, mpmath.mpc)):
        return mpmath.mpc(x)
    if isinstance(x, str) and "j" in x:
        return mpmath.mpc(x)
    return mpmath.mpf(x)


def is_complex(x) -> bool:
    return isinstance(x, (complex, mpmath.mpc, APComplex))


def decimal_string(x, digits: int) -> str:
    """``x`` correctly rounded to ``digits`` significant digits.

    The output never depends on locale and always carries exactly
    ``digits`` significant digits (trailing zeros included); an exact
    zero is written ``0``.
    """
    x = x.value if isinstance(x, APReal) else x
    if not isinstance(x, mpmath.mpf):
        with mpmath.workdps(int(digits) + GUARD_DIGITS):
            x = mpmath.mpf(x)
    if not x:
        return "0"
    return to_str(x._mpf_, int(digits), strip_zeros=False, min_fixed=-6, max_fixed=6)


def _round_to(x, digits: int):
    with mpmath.workdps(digits + GUARD_DIGITS):
        return mpmath.mpf(decimal_string(x, digits))


@functools.total_ordering
@dataclass(frozen=True, eq=False)
class APReal:
    """Real number tagged with the precision (decimal digits) it is quoted to."""

    value: mpmath.mpf
    precision: int

    def __post_init__(self):
        if int(self.precision) <= 0:
            raise DomainError(f"precision must be positive, got {self.precision}")
        object.__setattr__(self, "precision", int(self.precision))
        with workprec(self.precision):
            v = to_mp(self.value)
        if isinstance(v, mpmath.mpc):
            if v.imag != 0:
                raise DomainError("APReal cannot hold a complex value")
            v = v.real
        object.__setattr__(self, "value", v)

    def __str__(self) -> str:
        return decimal_string(self.value, self.precision)

    def __repr__(self) -> str:
        return f"APReal('{self}', precision={self.precision})"

    def __float__(self) -> float:
        return float(self.value)

    def rounded(self, digits: int | None = None):
        """The value correctly rounded to ``digits`` (default: own precision)."""
        return _round_to(self.value, self.precision if digits is None else digits)

    def _coerce(self, other):
        if isinstance(other, APReal):
            return other.value, min(self.precision, other.precision)
        if isinstance(other, APComplex):
            return NotImplemented, None
        return other, self.precision

    # Comparisons happen at the lower of the two precisions.
    def __eq__(self, other):
        if isinstance(other, APComplex):
            return other == self
        v, p = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        with workprec(p):
            return _round_to(self.value, p) == _round_to(to_mp(v), p)

    def __lt__(self, other):
        v, p = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        with workprec(p):
            return _round_to(self.value, p) < _round_to(to_mp(v), p)

    __hash__ = None

    def _arith(self, other, op):
        if isinstance(other, APComplex):
            return NotImplemented
        v, p = self._coerce(other)
        with workprec(p):
            return APReal(op(self.value, to_mp(v)), p)

    def __add__(self, other):
        return self._arith(other, lambda a, b: a + b)

    def __radd__(self, other):
        return self._arith(other, lambda a, b: b + a)

    def __sub__(self, other):
        return self._arith(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._arith(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._arith(other, lambda a, b: a * b)

    def __rmul__(self, other):
        return self._arith(other, lambda a, b: b * a)

    def __truediv__(self, other):
        return self._arith(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._arith(other, lambda a, b: b / a)

    def __neg__(self):
        return APReal(-self.value, self.precision)

    def __abs__(self):
        return APReal(abs(self.value), self.precision)


@dataclass(frozen=True, eq=False)
class APComplex:
    """Complex number whose parts share one quoted precision."""

    re: APReal
    im: APReal

    def __post_init__(self):
        if self.re.precision != self.im.precision:
            raise DomainError("real and imaginary parts must share a precision")

    @classmethod
    def from_value(cls, z, precision: int) -> "APComplex":
        with workprec(precision):
            z = mpmath.mpc(to_mp(z))
            return cls(APReal(z.real, precision), APReal(z.imag, precision))

    @property
    def precision(self) -> int:
        return self.re.precision

    @property
    def value(self) -> mpmath.mpc:
        with workprec(self.precision):
            return mpmath.mpc(self.re.value, self.im.value)

    def __str__(self) -> str:
        sign = "-" if self.im.value < 0 else "+"
        return f"({self.re} {sign} {abs(self.im)}j)"

    def __repr__(self) -> str:
        return f"APComplex({self}, precision={self.precision})"

    def __complex__(self) -> complex:
        return complex(self.value)

    def __abs__(self) -> APReal:
        with workprec(self.precision):
            return APReal(abs(self.value), self.precision)

    def __eq__(self, other):
        if isinstance(other, APComplex):
            return self.re == other.re and self.im == other.im
        if isinstance(other, APReal):
            return self.re == other and self.im == 0
        with workprec(self.precision):
            z = mpmath.mpc(to_mp(other))
        return self.re == z.real and self.im == z.imag

    __hash__ = None

    def _arith(self, other, op):
        p = self.precision
        if isinstance(other, (APReal, APComplex)):
            p = min(p, other.precision)
        with workprec(p):
            return APComplex.from_value(op(self.value, to_mp(other)), p)

    def __add__(self, other):
        return self._arith(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._arith(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._arith(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._arith(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._arith(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._arith(other, lambda a, b: b / a)

    def __neg__(self):
        return APComplex(-self.re, -self.im)


def ap(x, precision: int):
    """Wrap an mpmath value as APReal or APComplex depending on its type."""
    if isinstance(x, (complex, mpmath.mpc)):
        return APComplex.from_value(x, precision)
    return APReal(x, precision)


# ---------------------------------------------------------------------------
# Power series
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Truncated Taylor series in ``variable`` about ``center``.

    ``coeffs[n]`` multiplies ``(z - center)**n``; the series is known up to
    and including ``order = len(coeffs) - 1``.
    """

    center: object
    variable: str
    coeffs: tuple
    precision: int

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise DomainError(f"unknown series variable {self.variable!r}")
        if not self.coeffs:
            raise DomainError("a power series needs at least one coefficient")
        with workprec(self.precision):
            object.__setattr__(self, "center", to_mp(self.center))
            object.__setattr__(self, "coeffs", tuple(to_mp(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def like(self, coeffs: Iterable, precision: int | None = None) -> "PowerSeries":
        """A series with the same center and variable but new coefficients."""
        return PowerSeries(self.center, self.variable, tuple(coeffs),
                           self.precision if precision is None else precision)

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise DomainError(f"cannot extend order {self.order} series to {order}")
        return self.like(self.coeffs[: order + 1])

    def evaluate(self, z):
        """Horner evaluation of the truncated polynomial at ``z``."""
        with workprec(self.precision):
            x = to_mp(z) - self.center
            acc = mpmath.mpf(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc

    def quoted(self) -> list[str]:
        return [decimal_string(c, self.precision) if not isinstance(c, mpmath.mpc)
                else str(APComplex.from_value(c, self.precision)) for c in self.coeffs]

    def _check_compatible(self, other: "PowerSeries"):
        if self.variable != other.variable:
            raise DomainError(f"variable mismatch: {self.variable} vs {other.variable}")
        if self.center != other.center:
            raise DomainError(f"center mismatch: {self.center} vs {other.center}")

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            with workprec(self.precision):
                return self.like((self.coeffs[0] + to_mp(other),) + self.coeffs[1:])
        self._check_compatible(other)
        n = min(self.order, other.order)
        p = min(self.precision, other.precision)
        with workprec(p):
            return self.like((a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)), p)

    __radd__ = __add__

    def __neg__(self):
        return self.like(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return series_mul(self, other)
        with workprec(self.precision):
            k = to_mp(other)
            return self.like(c * k for c in self.coeffs)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            raise TypeError("series division is not supported")
        with workprec(self.precision):
            k = to_mp(other)
            return self.like(c / k for c in self.coeffs)


def series_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Cauchy product truncated to ``min(a.order, b.order)``."""
    a._check_compatible(b)
    n = min(a.order, b.order)
    p = min(a.precision, b.precision)
    with workprec(p):
        out = [mpmath.fsum(a.coeffs[k] * b.coeffs[m - k] for k in range(m + 1))
               for m in range(n + 1)]
    return a.like(out, p)


def series_log(a: PowerSeries) -> PowerSeries:
    """Logarithm of a series with nonzero constant term, same order.

    Uses ``b_n = a_n/a_0 - (1/(n a_0)) sum_{k=1}^{n-1} k b_k a_{n-k}``.
    """
    a0 = a.coeffs[0]
    if a0 == 0:
        raise DomainError("series_log: zero constant term, logarithm undefined at center")
    if not isinstance(a0, mpmath.mpc) and a0 < 0:
        raise DomainError("series_log: negative real constant term")
    with workprec(a.precision):
        b = [mpmath.log(a0)]
        for n in range(1, a.order + 1):
            acc = mpmath.fsum(k * b[k] * a.coeffs[n - k] for k in range(1, n))
            b.append(a.coeffs[n] / a0 - acc / (n * a0))
    return a.like(b)


def series_exp(b: PowerSeries) -> PowerSeries:
    """Formal exponential, the inverse recurrence of :func:`series_log`."""
    with workprec(b.precision):
        a = [mpmath.exp(b.coeffs[0])]
        for n in range(1, b.order + 1):
            a.append(mpmath.fsum(k * b.coeffs[k] * a[n - k] for k in range(1, n + 1)) / n)
    return b.like(a)


def binom(n: int, k: int) -> int:
    """Exact binomial coefficient; zero when ``k > n``."""
    if n < 0 or k < 0:
        raise DomainError("binom needs non-negative arguments")
    return math.comb(n, k)


def mobius_pow_coeff(r: int, n: int) -> int:
    """Coefficient of ``w**n`` in ``(1 - w)**(-2r)``."""
    if r < 0 or n < 0:
        raise DomainError("mobius_pow_coeff needs non-negative arguments")
    if r == 0:
        return 1 if n == 0 else 0
    return math.comb(n + 2 * r - 1, n)


def constant_series(c, like: PowerSeries, order: int | None = None) -> PowerSeries:
    order = like.order if order is None else order
    return like.like([c] + [0] * order)


def max_abs_diff(a: Sequence, b: Sequence):
    """Largest coefficient-wise absolute difference over the common length."""
    return max((abs(x - y) for x, y in zip(a, b)), default=mpmath.mpf(0))
