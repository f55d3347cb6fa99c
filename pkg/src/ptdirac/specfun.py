"""Special functions: log-gamma, beta, Pochhammer, Jacobi polynomials, 2F1.

Only what the normalization series and the spinor components need. Jacobi
polynomials are evaluated by the degree recurrence; the Rodrigues form is an
independent low-degree reference used by the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class JacobiParams:
    degree: int
    a: float
    b: float

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 0:
            raise DomainError(f"Jacobi degree must be a non-negative integer, got {self.degree!r}")
        if not (self.a > -1 and self.b > -1):
            raise DomainError(f"Jacobi parameters must exceed -1, got a={self.a!r}, b={self.b!r}")


def log_gamma(x: float) -> float:
    if not x > 0:
        raise DomainError(f"log_gamma is only provided for x > 0, got {x!r}")
    return math.lgamma(x)


def log_beta(x: float, y: float) -> float:
    if not (x > 0 and y > 0):
        raise DomainError(f"beta needs positive arguments, got ({x!r}, {y!r})")
    return math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y)


def beta(x: float, y: float) -> float:
    """Euler beta function ``Gamma(x) Gamma(y) / Gamma(x + y)``, via log space."""
    return math.exp(log_beta(x, y))


def pochhammer(a: float, k: int) -> float:
    """Rising factorial ``a (a+1) ... (a+k-1)``; ``(a)_0 = 1``."""
    if k < 0:
        raise DomainError(f"Pochhammer order must be non-negative, got {k!r}")
    out = 1.0
    for i in range(k):
        out *= a + i
        if out == 0.0:
            return 0.0
    return out


def log_abs_pochhammer(a: float, k: int) -> tuple[float, int]:
    """``(log|(a)_k|, sign)``; sign is 0 when the product vanishes."""
    total, sign = 0.0, 1
    for i in range(k):
        f = a + i
        if f == 0.0:
            return -math.inf, 0
        if f < 0:
            sign = -sign
        total += math.log(abs(f))
    return total, sign


def jacobi_eval(p: JacobiParams, x):
    """``P_n^{(a,b)}(x)`` by the three-term recurrence in the degree.

    ``x`` may be a scalar or an array.
    """
    n, a, b = p.degree, float(p.a), float(p.b)
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return _scalar(prev)
    cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0)
    for k in range(1, n):
        s = 2.0 * k + a + b
        c0 = 2.0 * (k + 1) * (k + a + b + 1) * s
        c1 = (s + 1.0) * ((s + 2.0) * s * x + a * a - b * b)
        c2 = 2.0 * (k + a) * (k + b) * (s + 2.0)
        prev, cur = cur, (c1 * cur - c2 * prev) / c0
    return _scalar(cur)


def jacobi_derivative(p: JacobiParams, x):
    """``d/dx P_n^{(a,b)} = (n + a + b + 1)/2 * P_{n-1}^{(a+1,b+1)}``."""
    n = p.degree
    if n == 0:
        return _scalar(np.zeros_like(np.asarray(x, dtype=float)))
    lower = JacobiParams(n - 1, p.a + 1.0, p.b + 1.0)
    return 0.5 * (n + p.a + p.b + 1.0) * jacobi_eval(lower, x)


def jacobi_rodrigues(p: JacobiParams, x: float) -> float:
    """Reference value from the Rodrigues formula, differentiated exactly.

    The n-th derivative of ``(1-x)^{a+n} (1+x)^{b+n}`` is expanded with the
    Leibniz rule, so no numerical differentiation is involved. Restricted to
    ``n <= 6``.
    """
    n, a, b = p.degree, float(p.a), float(p.b)
    if n > 6:
        raise DomainError("the Rodrigues reference path is limited to degree <= 6")
    if not -1.0 < x < 1.0:
        raise DomainError(f"x must lie in (-1, 1), got {x!r}")
    terms = []
    for k in range(n + 1):
        # d^k (1-x)^{a+n}  ->  (-1)^k (a+n-k+1)_k (1-x)^{n-k}  [after dividing (1-x)^a]
        # d^{n-k} (1+x)^{b+n}  ->  (b+k+1)_{n-k} (1+x)^k      [after dividing (1+x)^b]
        terms.append(
            math.comb(n, k)
            * (-1) ** k
            * pochhammer(a + n - k + 1.0, k)
            * pochhammer(b + k + 1.0, n - k)
            * (1.0 - x) ** (n - k)
            * (1.0 + x) ** k
        )
    return (-1) ** n * math.fsum(terms) / (2.0**n * math.factorial(n))


def hyp2f1_terminating(neg_n: int, b: float, c: float, x: float) -> float:
    """Terminating Gauss series ``2F1(-n, b; c; x)``.

    The alternating terms can exceed the sum by many orders of magnitude,
    so the series is accumulated exactly in rationals (float inputs are
    exact binary fractions) and rounded once at the end.
    """
    if int(neg_n) != neg_n or neg_n > 0:
        raise DomainError(f"first parameter must be a non-positive integer, got {neg_n!r}")
    n = -int(neg_n)
    if c <= 0 and float(c).is_integer() and -c < n:
        raise DomainError(f"2F1 lower parameter c={c!r} hits a pole before the series ends")
    fb, fc, fx = Fraction(b), Fraction(c), Fraction(x)
    term = Fraction(1)
    total = Fraction(1)
    for k in range(n):
        term *= (k - n) * (fb + k) / ((fc + k) * (k + 1)) * fx
        total += term
    return float(total)


def jacobi_via_hyp2f1(p: JacobiParams, x: float) -> float:
    """``P_n^{(a,b)}(x) = (a+1)_n / n! * 2F1(-n, a+b+n+1; a+1; (1-x)/2)``."""
    n, a, b = p.degree, float(p.a), float(p.b)
    lead = pochhammer(a + 1.0, n) / math.factorial(n)
    return lead * hyp2f1_terminating(-n, a + b + n + 1.0, a + 1.0, 0.5 * (1.0 - x))


def _scalar(v):
    return float(v) if np.ndim(v) == 0 else v
