import mpmath
import pytest

from xiforge.apcore import workprec
from xiforge.errors import DomainError
from xiforge.riemann import (ApproxConfig, approx_compare, dirichlet_log, dirichlet_rel_error, prefactor_direct,
                             prefactor_log, prefactor_terms)

CFG = ApproxConfig()


def test_config_validation():
    with pytest.raises(DomainError):
        ApproxConfig(dirichlet_terms=0)
    with pytest.raises(DomainError):
        ApproxConfig(prefactor_order=3)


def test_prefactor_close_to_direct():
    # error left after the (73/48)(w - 1) term is second order in (1 - w)
    w = mpmath.mpf("0.9")
    err = abs(prefactor_log(w, CFG).value - prefactor_direct(w, CFG).value)
    assert err < abs(prefactor_terms(w, CFG)[2])
    assert err < 2 * (1 - w) ** 2


def test_prefactor_terms_shape():
    t = prefactor_terms("0.99", CFG)
    assert abs(t[0]) > 10 * abs(t[1])
    assert t[0] > 0
    for w in ("0.8", "0.85", "0.9", "0.95", "0.99"):
        s = [mpmath.fsum(prefactor_terms(w, CFG)[: k + 1]) for k in range(3)]
        assert abs(s[2] - s[1]) < abs(s[1] - s[0])
    for bad in ("0", "1", "1.2", "-0.5"):
        with pytest.raises(DomainError):
            prefactor_log(bad, CFG)


def test_dirichlet_log():
    assert dirichlet_log("0.8", ApproxConfig(dirichlet_terms=1)).value == 0
    for w, quoted in (("0.8", 0.025), ("0.85", 0.005), ("0.9", 0.0002)):
        ratio = dirichlet_rel_error(w, CFG).value / quoted
        assert 0.5 <= ratio <= 2
    with pytest.raises(DomainError):
        dirichlet_log("1", CFG)
    with pytest.raises(DomainError):
        dirichlet_rel_error("0.2", CFG)


def test_compare_behaviour():
    tab = approx_compare(["0.5", "0.8", "0.85", "0.9", "0.95"], CFG)
    rows = {str(mpmath.nstr(r.w, 3)): r for r in tab.rows}
    assert rows["0.5"].rel_err > 0.1
    near = [rows[w].abs_err for w in ("0.8", "0.85", "0.9", "0.95")]
    assert all(a > b for a, b in zip(near, near[1:]))
    assert rows["0.95"].rel_err < 1e-3
    # measured 1.14%: the three-term prefactor leaves ~1.2 (1 - w)^2 behind
    assert rows["0.9"].rel_err < 0.015
    with workprec(30):
        assert abs(rows["0.9"].direct - mpmath.log(mpmath.mpf("2.9175"))) < 1e-4
    assert str(mpmath.nstr(rows["0.9"].direct, 5)) == "1.0707"


def test_compare_csv():
    text = approx_compare(["0.9"], CFG).to_csv()
    lines = text.splitlines()
    assert lines[0].startswith("#")
    assert lines[1] == "w,approx,direct,abs_err,rel_err"
    assert lines[2].startswith("0.900000000000000000000000000000,1.0829336867")
