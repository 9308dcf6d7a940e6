import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xiforge.apcore import (APComplex, APReal, PowerSeries, ap, binom, decimal_string, mobius_pow_coeff,
                            series_exp, series_log, series_mul, workprec)
from xiforge.errors import DomainError

P = 30


def ws(coeffs, p=P):
    return PowerSeries(0, "w", tuple(coeffs), p)


def test_decimal_string_exact_digits():
    with workprec(40):
        assert decimal_string(mpmath.pi, 30) == "3.14159265358979323846264338328"
        assert decimal_string(mpmath.mpf(1) / 3, 5) == "0.33333"
    assert decimal_string(0, 30) == "0"
    assert decimal_string("0.5", 6) == "0.500000"


def test_decimal_string_keeps_full_precision_of_input():
    # regression: inputs must not be squeezed through 53-bit floats
    with workprec(50):
        x = mpmath.mpf(2) / 7
    assert decimal_string(x, 40) == "0.2857142857142857142857142857142857142857"


def test_apreal_compares_at_lower_precision():
    with workprec(40):
        a = APReal(mpmath.mpf(1) / 3, 10)
        b = APReal(mpmath.mpf("0.33333333334"), 30)
    assert a == b
    assert not APReal(mpmath.mpf(1) / 3, 30) == b
    assert APReal(1, 20) < APReal(2, 20)


def test_apreal_arithmetic_and_quoting():
    a = APReal("1.5", 20)
    b = APReal(2, 30)
    c = a * b + 1
    assert c.precision == 20
    assert str(c) == "4.0000000000000000000"
    assert float(a / b) == 0.75
    with pytest.raises(DomainError):
        APReal(1, 0)


def test_apcomplex():
    z = APComplex.from_value(mpmath.mpc(1, -2), 20)
    assert z.re == 1 and z.im == -2
    assert abs(z * z - APComplex.from_value(mpmath.mpc(-3, -4), 20)).value < 1e-18
    assert isinstance(ap(mpmath.mpc(1, 1), 10), APComplex)
    assert isinstance(ap(mpmath.mpf(1), 10), APReal)
    with pytest.raises(DomainError):
        APComplex(APReal(1, 10), APReal(1, 20))


def test_series_basics():
    s = ws([1, 2, 3])
    assert s.order == 2 and len(s.coeffs) == 3
    assert s.evaluate(0) == s[0]
    assert s.evaluate(2) == 1 + 4 + 12
    with pytest.raises(DomainError):
        PowerSeries(0, "x", (1,), P)
    with pytest.raises(DomainError):
        s.truncate(5)


def test_mul_examples():
    one_plus_w = ws([1, 1])
    assert tuple(series_mul(one_plus_w, ws([1, 1, 0])).coeffs) == (1, 2)
    assert tuple((ws([1, 1, 0]) * ws([1, 1, 0])).coeffs) == (1, 2, 1)
    a = ws([3, -1, 4, 1, 5])
    assert tuple(series_mul(a, ws([1, 0, 0, 0, 0])).coeffs) == tuple(a.coeffs)
    geo = ws([1] * 9)
    assert tuple(series_mul(geo, ws([1, -1] + [0] * 7)).coeffs) == (1,) + (0,) * 8


def test_mul_mismatch():
    with pytest.raises(DomainError):
        series_mul(ws([1, 1]), PowerSeries(0, "s", (1, 1), P))
    with pytest.raises(DomainError):
        series_mul(ws([1, 1]), PowerSeries(1, "w", (1, 1), P))


def test_log_examples():
    log_geo = series_log(ws([1] * 8))
    assert log_geo[0] == 0
    lc = series_log(ws([5, 0, 0]))
    with workprec(P):
        for n in range(1, 8):
            assert abs(log_geo[n] - mpmath.mpf(1) / n) < mpmath.mpf(10) ** -(P + 2)
        assert abs(lc[0] - mpmath.log(5)) < mpmath.mpf(10) ** -(P + 2)
    assert lc[1] == 0 and lc[2] == 0
    with pytest.raises(DomainError):
        series_log(ws([0, 1]))
    with pytest.raises(DomainError):
        series_log(ws([-1, 1]))


small = st.lists(st.floats(-0.5, 0.5, allow_nan=False), min_size=2, max_size=12)


@settings(max_examples=40, deadline=None)
@given(small)
def test_log_exp_round_trip(cs):
    b = ws(cs)
    back = series_log(series_exp(b))
    with workprec(P):
        assert max(abs(x - y) for x, y in zip(back.coeffs, b.coeffs)) < mpmath.mpf(10) ** -(P - 2)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(0.1, 3), min_size=1, max_size=1), small)
def test_exp_log_round_trip(c0, rest):
    a = ws(c0 + rest)
    back = series_exp(series_log(a))
    with workprec(P):
        assert max(abs(x - y) for x, y in zip(back.coeffs, a.coeffs)) < mpmath.mpf(10) ** -(P - 2)


# the product truncates to the shortest of the three orders
@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-2, 2), min_size=1, max_size=10),
       st.lists(st.floats(-2, 2), min_size=1, max_size=10),
       st.lists(st.floats(-2, 2), min_size=1, max_size=10))
def test_mul_commutative_associative(x, y, z):
    a, b, c = ws(x), ws(y), ws(z)
    ab, ba = series_mul(a, b), series_mul(b, a)
    l, r = series_mul(ab, c), series_mul(a, series_mul(b, c))
    assert l.order == r.order == min(a.order, b.order, c.order)
    with workprec(P):
        tol = mpmath.mpf(10) ** -(P - 4)
        assert all(abs(p - q) < tol for p, q in zip(ab.coeffs, ba.coeffs))
        assert all(abs(p - q) < tol * (1 + abs(p)) for p, q in zip(l.coeffs, r.coeffs))


def test_binom():
    assert binom(4, 2) == 6
    assert binom(7, 0) == 1
    assert binom(30, 15) == 155117520
    assert binom(3, 5) == 0


def _pascal(n, k):
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row[k] if k <= n else 0


def test_binom_matches_pascal():
    for n in range(25):
        for k in range(n + 2):
            assert binom(n, k) == _pascal(n, k)


def test_mobius_pow_coeff():
    assert mobius_pow_coeff(1, 2) == 3
    assert mobius_pow_coeff(0, 5) == 0
    assert mobius_pow_coeff(0, 0) == 1
    assert mobius_pow_coeff(3, 4) == 126


def test_mobius_pow_coeff_brute_force():
    for r in range(7):
        # (1 - w)^(-2r) as the 2r-fold product of the geometric series
        poly = [1] + [0] * 12
        for _ in range(2 * r):
            poly = [sum(poly[: n + 1]) for n in range(13)]
        assert [mobius_pow_coeff(r, n) for n in range(13)] == poly


def test_precision_stability():
    vals = {}
    for p in (30, 60):
        with workprec(p):
            x = series_log(ws([mpmath.mpf(2) / 3, mpmath.pi, mpmath.e, 1, 1], p))
        vals[p] = [decimal_string(c, 30) for c in x.coeffs]
    with workprec(70):
        diffs = [abs(mpmath.mpf(a) - mpmath.mpf(b)) for a, b in zip(vals[30], vals[60])]
    assert max(diffs) < mpmath.mpf(10) ** -29 * 10


