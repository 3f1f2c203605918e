"""Bracketing scalar root finding shared by the numeric layers."""

from __future__ import annotations

import math
from typing import Callable

__all__ = ["brentq"]


def brentq(
    f: Callable[[float], float],
    a: float,
    b: float,
    *,
    rtol: float = 1e-13,
    atol: float = 1e-13,
    max_iter: int = 100,
) -> float:
    """Root of f on the bracket [a, b] by Brent's method.

    Requires f(a) and f(b) to have opposite signs (or one of them to be
    exactly zero). Combines inverse quadratic interpolation, the secant
    step, and bisection, so convergence is guaranteed and usually fast.
    """
    fa = f(a)
    if fa == 0.0:
        return a
    fb = f(b)
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        raise ValueError(f"brentq requires a sign change on [{a!r}, {b!r}]")

    c, fc = a, fa
    d = e = b - a
    for _ in range(max_iter):
        if (fb > 0.0) == (fc > 0.0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol = 2.0 * rtol * abs(b) + 0.5 * atol
        m = 0.5 * (c - b)
        if abs(m) <= tol or fb == 0.0:
            return b
        if abs(e) < tol or abs(fa) <= abs(fb):
            d = e = m
        else:
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0.0:
                q = -q
            else:
                p = -p
            if 2.0 * p < min(3.0 * m * q - abs(tol * q), abs(e * q)):
                e = d
                d = p / q
            else:
                d = e = m
        a, fa = b, fb
        if abs(d) > tol:
            b += d
        else:
            b += math.copysign(tol, m)
        fb = f(b)
        if fb == 0.0:
            return b
    return b
