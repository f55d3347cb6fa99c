"""Globally adaptive Gauss-Legendre quadrature."""

from __future__ import annotations

import heapq
from functools import lru_cache

import numpy as np

from .errors import QuadratureError


@lru_cache(maxsize=8)
def _rule(order: int):
    return np.polynomial.legendre.leggauss(order)


def _panel(f, a: float, b: float, order: int) -> float:
    nodes, weights = _rule(order)
    half = 0.5 * (b - a)
    return half * float(np.dot(weights, f(0.5 * (a + b) + half * nodes)))


def adaptive_gauss_legendre(f, a: float, b: float, rtol: float = 1e-13, atol: float = 0.0,
                            order: int = 20, max_panels: int = 2000) -> tuple[float, float]:
    """Integrate the vectorized ``f`` over ``[a, b]``.

    Each panel's error is estimated by comparing its ``order``-point value
    with the sum over its two halves; the worst panel is split until the
    summed estimate falls below ``max(atol, rtol * |I|)``. Returns
    ``(value, error_estimate)``.
    """

    def refine(lo, hi):
        whole = _panel(f, lo, hi, order)
        mid = 0.5 * (lo + hi)
        left, right = _panel(f, lo, mid, order), _panel(f, mid, hi, order)
        return left + right, abs(left + right - whole)

    value, err = refine(a, b)
    heap = [(-err, a, b, value)]
    total_err = err
    while total_err > max(atol, rtol * abs(value)):
        if len(heap) >= max_panels:
            raise QuadratureError("adaptive Gauss-Legendre did not converge", total_err)
        neg_err, lo, hi, v = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        vl, el = refine(lo, mid)
        vr, er = refine(mid, hi)
        value += vl + vr - v
        total_err += el + er + neg_err
        heapq.heappush(heap, (-el, lo, mid, vl))
        heapq.heappush(heap, (-er, mid, hi, vr))
    # re-sum to shed accumulated rounding from the running updates
    value = float(np.sum([item[3] for item in heap]))
    return value, total_err
