"""Composite Gauss-Legendre quadrature at arbitrary precision."""

from __future__ import annotations

from functools import lru_cache

import mpmath


def _legendre(n: int, x):
    """P_n(x) and P_{n-1}(x) by the three-term recurrence."""
    p0, p1 = mpmath.mpf(1), x
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    return p1, p0


@lru_cache(maxsize=64)
def gauss_legendre(n: int, dps: int) -> tuple[tuple, tuple]:
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].

    Newton iteration on P_n from the Tricomi initial guesses; results are
    accurate to ``dps`` digits.
    """
    if n < 1:
        raise ValueError("need at least one node")
    with mpmath.workdps(dps + 10):
        eps = mpmath.mpf(10) ** (-(dps + 5))
        nodes, weights = [], []
        for i in range(1, n // 2 + 1):
            x = mpmath.cos(mpmath.pi * (i - mpmath.mpf(1) / 4) / (n + mpmath.mpf(1) / 2))
            for _ in range(100):
                pn, pm = _legendre(n, x)
                dx = pn / (n * (x * pn - pm) / (x * x - 1))
                x -= dx
                if abs(dx) < eps:
                    break
            pn, pm = _legendre(n, x)
            dp = n * (x * pn - pm) / (x * x - 1)
            w = 2 / ((1 - x * x) * dp * dp)
            nodes += [x, -x]
            weights += [w, w]
        if n % 2:
            # Middle node x = 0: P_n'(0) = n P_{n-1}(0).
            _, pm = _legendre(n, mpmath.mpf(0))
            nodes.append(mpmath.mpf(0))
            weights.append(2 / (n * pm) ** 2)
    with mpmath.workdps(dps):
        order = sorted(range(n), key=lambda j: nodes[j])
        return tuple(+nodes[j] for j in order), tuple(+weights[j] for j in order)


def composite_rule(a, b, panels: int, n: int, dps: int) -> list[tuple]:
    """(node, weight) pairs of an n-point rule on each of ``panels`` equal panels."""
    xs, ws = gauss_legendre(n, dps)
    a, b = mpmath.mpf(a), mpmath.mpf(b)
    h = (b - a) / panels
    out = []
    for p in range(panels):
        lo = a + p * h
        for x, w in zip(xs, ws):
            out.append((lo + h * (x + 1) / 2, w * h / 2))
    return out


def integrate(f, a, b, panels: int, n: int, dps: int):
    """Composite Gauss-Legendre estimate of the integral of f over [a, b]."""
    return mpmath.fsum(w * f(u) for u, w in composite_rule(a, b, panels, n, dps))
