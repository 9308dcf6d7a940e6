import mpmath
import pytest

from xiforge.apcore import series_exp, workprec
from xiforge.errors import DomainError, TruncationError
from xiforge.expansions import (W_IDS, coefficient_growth, combine_plus_minus, log_growth_scan, named_series,
                                recenter_xi, series_csv, w_log_series, w_series)
from xiforge.pustylnikov import CoeffTable
from xiforge.specfun import xi_direct

from conftest import close

P = 30
TIGHT = mpmath.mpf(10) ** -(P - 2)


def test_recenter_examples(table):
    f = recenter_xi("at_zero", 12, table).coeffs
    assert close(f[0], "0.500000000000000000000000", 1e-24)
    assert close(f[1], "-0.0115478544830605169071551", 1e-24)
    d = recenter_xi("minus_half", 12, table).coeffs
    assert close(d[1], "-0.0234707786048020825988372", 1e-24)


def test_plus_minus_examples(table):
    plus, minus = combine_plus_minus(12, table)
    assert close(plus.coeffs[0], "0.502925908457319033969223", 1e-24)
    assert close(minus.coeffs[0], "-0.005805130269004924056449", 1e-24)
    with workprec(P):
        assert close(plus.coeffs[2] + minus.coeffs[2], "0.0114859721575727187676249", 1e-24)


def test_plus_minus_identities(table):
    plus, minus = combine_plus_minus(12, table)
    h = recenter_xi("plus_half", 12, table).coeffs
    m = recenter_xi("minus_half", 12, table).coeffs
    with workprec(P):
        for n in range(13):
            assert abs(plus.coeffs[n] + minus.coeffs[n] - h[n]) < TIGHT
            assert abs(plus.coeffs[n] - minus.coeffs[n] - m[n]) < TIGHT


def test_plus_half_series_is_even(table):
    h = recenter_xi("plus_half", 20, table).coeffs
    assert all(h[n] == 0 for n in range(1, 21, 2))
    # recentring the at_zero series back to 1/2 kills the odd terms too
    f = recenter_xi("at_zero", 40, table).series
    with workprec(P):
        for n in (1, 3, 5):
            c = mpmath.fsum(mpmath.binomial(k, n) * f[k] * mpmath.mpf(1) / 2 ** (k - n) for k in range(n, 41))
            assert abs(c) < mpmath.mpf(10) ** -20


def test_reflection_symmetry(table):
    f = recenter_xi("at_zero", 12, table).coeffs
    g = recenter_xi("at_one", 12, table).coeffs
    with workprec(P):
        assert all(abs(g[n] - (-1) ** n * f[n]) < TIGHT for n in range(13))


def test_at_zero_matches_direct(table, ctx):
    f = recenter_xi("at_zero", 12, table).series
    with workprec(P):
        s = mpmath.mpf("0.2")
        tail = 2 * abs(f[12]) * s ** 13 / (1 - s)
        assert abs(f.evaluate(s) - xi_direct(s, ctx).value) < tail + TIGHT


def test_truncation_error_names_depth(table):
    short = CoeffTable(P, table.values[:4])
    with pytest.raises(TruncationError) as e:
        recenter_xi("at_zero", 3, short)
    assert e.value.required > 3
    assert "max_r" in str(e.value)
    with pytest.raises(DomainError):
        recenter_xi("at_two", 3, table)


def test_w_series_examples(table):
    h = w_series("xi_h_of_w", 12, table).coeffs
    assert close(h[1], "0.0234707786048020825988372", 1e-24)
    m = w_series("xi_m_of_w", 12, table).coeffs
    assert m[1] == 0
    # the printed w-series carries about 23 reliable digits
    assert close(m[3], "0.022971944315145437535244", 1e-18)
    with workprec(P):
        assert abs(m[3] - 2 * table[1]) < TIGHT


def test_w_series_plus_minus(table):
    h, m = (w_series(i, 12, table).coeffs for i in ("xi_h_of_w", "xi_m_of_w"))
    p, q = (w_series(i, 12, table).coeffs for i in ("xi_plus_of_w", "xi_minus_of_w"))
    with workprec(P):
        assert all(abs(p[n] + q[n] - h[n]) < TIGHT and abs(p[n] - q[n] - m[n]) < TIGHT for n in range(13))


def test_w_series_matches_direct(table, ctx):
    h = w_series("xi_h_of_w", 60, table).series
    with workprec(P):
        w = mpmath.mpf("0.3")
        s = 1 / (1 - w)
        assert abs(h.evaluate(w) - xi_direct(s + mpmath.mpf(1) / 2, ctx).value) < mpmath.mpf(10) ** -25


def test_xi_h_monotone_in_w(table):
    h = w_series("xi_h_of_w", 40, table).series
    vals = [h.evaluate(mpmath.mpf(k) / 20) for k in range(0, 20)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_log_series_examples(table):
    assert close(w_log_series("log_xi_h_of_w", 12, table).coeffs[0], "-0.675835813236695767842275", 1e-24)
    assert close(w_log_series("log_xi_minus_of_w", 12, table).coeffs[0], "-5.1490132232563522103123", 1e-21)
    lh = w_log_series("log_xi_h_of_w", 12, table)
    back = series_exp(lh.series).coeffs
    h = w_series("xi_h_of_w", 12, table).coeffs
    with workprec(P):
        assert all(abs(a - b) < TIGHT for a, b in zip(back, h))
    assert all(c > 0 for c in lh.coeffs[1:13])


def test_log_series_needs_positive_constant(table):
    with pytest.raises(DomainError):
        w_log_series("log_xi_q_of_w", 4, table)


def test_growth_scan(table):
    scan = log_growth_scan("log_xi_m_of_w", ["0.4"], [8, 12, 64], table)
    by_order = {o: v for _, o, v in scan.partial_sums}
    assert abs(by_order[12] - by_order[8]) < 1e-3
    assert 0.9 < scan.growth < 1.1
    assert scan.verdicts[0][1] is True
    for ident in ("log_xi_h_of_w", "log_xi_plus_of_w", "log_xi_minus_of_w"):
        assert 0.9 < 1 / coefficient_growth(w_log_series(ident, 64, table).coeffs) < 1.1
    with pytest.raises(DomainError):
        log_growth_scan("log_xi_m_of_w", ["1.2"], [8], table)


def test_named_series_and_csv(table):
    for ident in W_IDS + ("xi_of_s", "xi_plus", "xi_m_recentered_half"):
        assert named_series(ident, 4, table).series.order == 4
    text = series_csv(named_series("xi_of_s", 2, table))
    lines = text.splitlines()
    assert lines[0] == "# id=xi_of_s center=0.0 variable=s precision=30"
    assert lines[1] == "n,coefficient"
    assert lines[2] == "0,0.500000000000000000000000000000"
