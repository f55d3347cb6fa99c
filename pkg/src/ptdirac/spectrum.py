"""Bound-state energies from the spin-symmetric spectrum condition.

The physical condition used for root finding is

    h(E) = 2 eps(E) + M - sqrt(1 + 4 delta(E)) = 0,    M = 2n + D,

which keeps only the ``eps >= 0`` branch. Its square is the transcendental
equation ``(mu - E)(mu + E - c1) = alpha^2/4 [M - sqrt(alpha^2 + 4 w (E + mu - c1))/alpha]^2``
(``w = v0 + s0``), retained here as ``residual_squared`` for consistency checks.
Quantum numbers enter only through ``M``, so levels sharing ``M`` are
degenerate bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError, NoBoundState
from .model import ModelParams, QuantumNumbers, dimensionless_of

SCAN_INTERVALS = 4096
DEFAULT_TOL = 1e-13


@dataclass(frozen=True)
class ExistenceReport:
    exists: bool
    margin: float
    reason: str


@dataclass(frozen=True)
class SpectralPoint:
    params: ModelParams
    q: QuantumNumbers
    energy: float
    eps: float
    delta: float
    bracket: tuple[float, float]
    residual_at_root: float
    iterations: int
    other_roots: tuple[float, ...] = field(default=())


def _check_window(E: float, p: ModelParams) -> None:
    lo, hi = p.window
    if not lo <= E <= hi:
        raise DomainError(f"E={E!r} lies outside the bound-state window [{lo!r}, {hi!r}]")


def _sqrt_arg(E: float, p: ModelParams) -> float:
    arg = p.alpha**2 + 4.0 * p.depth * (E + (p.mu - p.c1))
    if arg < 0:
        raise DomainError(f"negative square-root argument {arg!r} at E={E!r}")
    return arg


def residual_squared(E: float, p: ModelParams, q: QuantumNumbers) -> float:
    """Left minus right side of the squared spectrum condition."""
    _check_window(E, p)
    bracket = q.m_index - math.sqrt(_sqrt_arg(E, p)) / p.alpha
    return (p.mu - E) * (E + (p.mu - p.c1)) - 0.25 * p.alpha**2 * bracket**2


def _h(E: float, p: ModelParams, m_index: int) -> float:
    prod = max((p.mu - E) * (E + (p.mu - p.c1)), 0.0)
    eps = math.sqrt(prod) / p.alpha
    delta = p.depth * (E + (p.mu - p.c1)) / p.alpha**2
    return 2.0 * eps + m_index - math.sqrt(1.0 + 4.0 * delta)


def _h_vec(E: np.ndarray, p: ModelParams, m_index: int) -> np.ndarray:
    prod = np.maximum((p.mu - E) * (E + (p.mu - p.c1)), 0.0)
    eps = np.sqrt(prod) / p.alpha
    delta = p.depth * (E + (p.mu - p.c1)) / p.alpha**2
    return 2.0 * eps + m_index - np.sqrt(1.0 + 4.0 * delta)


def residual_unsquared(E: float, p: ModelParams, q: QuantumNumbers) -> float:
    """``h(E) = 2 eps + M - sqrt(1 + 4 delta)``; its roots are the physical levels."""
    _check_window(E, p)
    _sqrt_arg(E, p)
    return _h(E, p, q.m_index)


def existence(p: ModelParams, m_index: int) -> ExistenceReport:
    """A level exists iff ``sqrt(1 + 4 delta(E=mu)) > M``.

    ``h`` equals ``M - 1 > 0`` at the lower window edge and
    ``M - sqrt(1 + 4 delta(mu))`` at the upper one.
    """
    delta_top = p.depth * (2.0 * p.mu - p.c1) / p.alpha**2
    margin = math.sqrt(max(1.0 + 4.0 * delta_top, 0.0)) - m_index
    if margin > 0:
        return ExistenceReport(True, margin, f"sqrt(1+4 delta(mu)) exceeds M={m_index} by {margin:.6g}")
    return ExistenceReport(
        False, margin, f"no bound state: sqrt(1+4 delta(mu)) - M = {margin:.6g} <= 0 for M={m_index}"
    )


def refine_bracket(f, a: float, b: float, fa: float, fb: float, rtol: float, maxiter: int = 400):
    """Shrink a sign-change bracket by false position with Illinois weighting.

    A bisection step is forced whenever two consecutive steps fail to halve
    the bracket, which keeps the worst case linear. Returns
    ``(root, (a, b), iterations)``.
    """
    if fa == 0.0:
        return a, (a, a), 0
    if fb == 0.0:
        return b, (b, b), 0
    if (fa > 0) == (fb > 0):
        raise DomainError("refine_bracket needs a sign change")
    side = 0
    slow = 0
    width = abs(b - a)
    true_a, true_b = fa, fb
    it = 0
    while it < maxiter:
        it += 1
        if slow >= 2:
            c = 0.5 * (a + b)
            slow = 0
        else:
            c = (a * fb - b * fa) / (fb - fa)
            if not min(a, b) < c < max(a, b):
                c = 0.5 * (a + b)
        fc = f(c)
        if fc == 0.0:
            return c, (c, c), it
        if (fc > 0) == (fa > 0):
            a, fa, true_a = c, fc, fc
            if side == -1:
                fb *= 0.5
            side = -1
        else:
            b, fb, true_b = c, fc, fc
            if side == 1:
                fa *= 0.5
            side = 1
        new_width = abs(b - a)
        slow = slow + 1 if new_width > 0.5 * width else 0
        width = new_width
        if width <= rtol * max(abs(a), abs(b)) or width == 0.0:
            break
    root = a if abs(true_a) < abs(true_b) else b
    return root, (min(a, b), max(a, b)), it


@lru_cache(maxsize=4096)
def _solve_m(p: ModelParams, m_index: int, tol: float):
    lo, hi = p.c1 - p.mu, p.mu
    if lo >= hi:
        raise DomainError(f"empty bound-state window: c1 - mu = {lo!r} >= mu = {hi!r}")
    report = existence(p, m_index)
    grid = lo + (hi - lo) * (np.arange(SCAN_INTERVALS + 1) / SCAN_INTERVALS)
    grid[-1] = hi
    vals = _h_vec(grid, p, m_index)
    flips = np.nonzero(np.signbit(vals[:-1]) != np.signbit(vals[1:]))[0]
    if flips.size == 0:
        raise NoBoundState(report)

    def f(E):
        return _h(E, p, m_index)

    roots = []
    for k in flips:
        a, b = float(grid[k]), float(grid[k + 1])
        roots.append(refine_bracket(f, a, b, f(a), f(b), tol))
    return roots, report


def solve_level(p: ModelParams, q: QuantumNumbers, tol: float = DEFAULT_TOL) -> SpectralPoint:
    """Lowest physical root of ``h`` in the window ``(c1 - mu, mu)``.

    The window is scanned on a fixed grid of 4096 subintervals; each sign
    change is refined to relative width ``tol``. Extra roots, if any, are
    listed in ``other_roots``. Raises ``NoBoundState`` when ``h`` never
    changes sign.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    roots, _ = _solve_m(p, q.m_index, float(tol))
    energy, bracket, iterations = roots[0]
    state = dimensionless_of(energy, p)
    return SpectralPoint(
        params=p,
        q=q,
        energy=energy,
        eps=state.eps,
        delta=state.delta,
        bracket=bracket,
        residual_at_root=_h(energy, p, q.m_index),
        iterations=iterations,
        other_roots=tuple(r[0] for r in roots[1:]),
    )


def limiting_energy(m_index: int, p: ModelParams) -> float:
    """Small-``alpha`` limit ``E = u alpha^2`` for ``c1 = mu``.

    With ``E = u alpha^2`` and ``alpha -> 0`` the condition becomes
    ``4 (mu - w) u + 4 M sqrt(mu) sqrt(u) + (M^2 - 1) = 0``; the non-negative
    root in ``sqrt(u)`` is returned as ``u alpha^2``.
    """
    if p.c1 != p.mu:
        raise DomainError("the limiting law is derived for c1 == mu")
    M = float(m_index)
    qa = 4.0 * (p.mu - p.depth)
    qb = 4.0 * M * math.sqrt(p.mu)
    qc = M * M - 1.0
    if qa == 0.0:
        cands = [-qc / qb]
    else:
        disc = qb * qb - 4.0 * qa * qc
        if disc < 0:
            raise NoBoundState(ExistenceReport(False, math.nan, "limiting quadratic has no real root"))
        sq = math.sqrt(disc)
        cands = [(-qb + sq) / (2.0 * qa), (-qb - sq) / (2.0 * qa)]
    good = [c for c in cands if c >= 0]
    if not good:
        raise NoBoundState(ExistenceReport(False, math.nan, "limiting quadratic has no non-negative root"))
    root = max(good)
    return root * root * p.alpha**2


@dataclass(frozen=True)
class GridCell:
    dim: int
    n: int
    alpha: float
    q: QuantumNumbers
    point: SpectralPoint | None
    report: ExistenceReport
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.point is not None


def spectrum_grid(p: ModelParams, dims, n_values, alphas, tol: float = DEFAULT_TOL) -> list[GridCell]:
    """Outer product over dimensions, principal numbers and ranges.

    Rows come out ordered by ``(dim, n, alpha)`` in the order given. Per-cell
    failures are recorded on the row instead of raised.
    """
    rows = []
    for dim in dims:
        for n in n_values:
            q = QuantumNumbers.from_principal(n, dim)
            for alpha in alphas:
                pa = p.with_alpha(alpha)
                report = existence(pa, q.m_index)
                try:
                    rows.append(GridCell(dim, n, alpha, q, solve_level(pa, q, tol), report))
                except NoBoundState as exc:
                    rows.append(GridCell(dim, n, alpha, q, None, exc.report, str(exc)))
                except DomainError as exc:
                    rows.append(GridCell(dim, n, alpha, q, None, report, str(exc)))
    return rows
