"""Finite-difference cross-check of the closed-form spectrum.

In ``x = alpha r`` the upper-component equation reads

    L_E F = -F'' + gamma/sinh^2(x) F - delta(E)/cosh^2(x) F = -eps(E)^2 F,

so a level is an energy at which the ``n_r``-th eigenvalue of the
discretized ``L_E`` equals ``-eps(E)^2``. Whether that eigenvalue lies above
or below the target is read off a Sturm count at the shift ``-eps(E)^2``,
which turns the self-consistency problem into plain bisection in ``E``.
Energies from successively halved grids are Richardson-extrapolated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import DomainError, NoBoundState
from .model import ModelParams, QuantumNumbers
from .spectrum import ExistenceReport

CENTRIFUGAL = ("sinh", "exact")


@dataclass(frozen=True)
class OracleConfig:
    x_min: float = 1e-6
    x_max: float | None = None
    points: int = 4000
    refine_levels: int = 2
    tol_energy: float = 1e-8
    scan_intervals: int = 512
    multisection: int = 32

    def __post_init__(self):
        if self.points < 100:
            raise DomainError("the oracle grid needs at least 100 points")
        if not 0 < self.x_min < self.resolved_x_max():
            raise DomainError("need 0 < x_min < x_max")
        if self.refine_levels < 0:
            raise DomainError("refine_levels must be non-negative")

    def resolved_x_max(self, eps_est: float | None = None) -> float:
        if self.x_max is not None:
            return self.x_max
        if eps_est and eps_est > 0:
            return max(30.0 / eps_est, 40.0)
        return 40.0


@dataclass(frozen=True)
class TridiagonalOperator:
    """Symmetric tridiagonal matrix ``diag``/``off`` on interior nodes ``x``."""

    diag: np.ndarray
    off: np.ndarray
    x: np.ndarray
    h: float

    @property
    def size(self) -> int:
        return self.diag.size


@dataclass(frozen=True)
class OracleResult:
    energy: float
    level_energies: tuple[float, ...]
    observed_order: float | None
    points: tuple[int, ...]
    x_max: float


def _grid(cfg: OracleConfig, level: int, x_max: float):
    intervals = cfg.points * 2**level
    h = (x_max - cfg.x_min) / intervals
    x = cfg.x_min + h * np.arange(1, intervals)
    return x, h


def _potential_parts(x: np.ndarray, gamma: float, centrifugal: str):
    if centrifugal == "sinh":
        cent = gamma / np.sinh(x) ** 2
    elif centrifugal == "exact":
        cent = gamma / x**2
    else:
        raise DomainError(f"centrifugal must be one of {CENTRIFUGAL}, got {centrifugal!r}")
    sech2 = 1.0 / np.cosh(x) ** 2
    return cent, sech2


def _eps2_delta(E, p: ModelParams):
    lower = E + (p.mu - p.c1)
    return (p.mu - E) * lower / p.alpha**2, p.depth * lower / p.alpha**2


def _in_window(E: float, p: ModelParams) -> None:
    lo, hi = p.window
    if not lo <= E <= hi:
        raise DomainError(f"E={E!r} lies outside the bound-state window [{lo!r}, {hi!r}]")


def build_operator(
    E: float,
    p: ModelParams,
    q: QuantumNumbers,
    cfg: OracleConfig = OracleConfig(),
    centrifugal: str = "sinh",
    level: int = 0,
    gamma: float | None = None,
) -> TridiagonalOperator:
    """Second-order central differences for ``L_E`` with Dirichlet ends.

    ``gamma`` overrides ``q.gamma`` (used to probe the ``gamma = 0`` limit).
    """
    _in_window(E, p)
    g = float(q.gamma) if gamma is None else float(gamma)
    x, h = _grid(cfg, level, cfg.resolved_x_max())
    cent, sech2 = _potential_parts(x, g, centrifugal)
    _, delta = _eps2_delta(E, p)
    diag = 2.0 / h**2 + cent - delta * sech2
    off = np.full(x.size - 1, -1.0 / h**2)
    return TridiagonalOperator(diag, off, x, h)


def sturm_count(diag, off, shift) -> np.ndarray:
    """Number of eigenvalues strictly below ``shift``.

    ``diag`` may be ``(N,)`` or ``(N, K)`` (K matrices sharing ``off``);
    ``shift`` may be a scalar or a length-K vector. Counts negative pivots
    of the ``LDL^T`` factorization of ``T - shift``.
    """
    diag = np.asarray(diag, dtype=float)
    shift = np.asarray(shift, dtype=float)
    off2 = np.asarray(off, dtype=float) ** 2
    d = diag - shift if diag.ndim == 1 else diag - shift[None, ...]
    piv = np.array(d[0], dtype=float)
    count = (piv < 0).astype(np.int64)
    tmp = np.empty_like(piv)
    neg = np.empty(piv.shape, dtype=bool)
    # an exact zero pivot makes the next one -inf and the one after finite again,
    # which is the limit of an infinitesimal perturbation
    with np.errstate(divide="ignore", invalid="ignore"):
        for i in range(1, d.shape[0]):
            np.divide(off2[i - 1], piv, out=tmp)
            np.subtract(d[i], tmp, out=piv)
            np.less(piv, 0.0, out=neg)
            count += neg
    return count


def bisect_eigenvalues(op: TridiagonalOperator, k: int, rtol: float = 1e-14) -> np.ndarray:
    """The ``k`` smallest eigenvalues by Sturm-count bisection.

    All ``k`` brackets advance together, one shift per eigenvalue per step.
    """
    radius = np.abs(op.off)
    left = np.concatenate([[0.0], radius])
    right = np.concatenate([radius, [0.0]])
    lo = float(np.min(op.diag - left - right))
    hi = float(np.max(op.diag + left + right))
    idx = np.arange(k)
    a = np.full(k, lo)
    b = np.full(k, hi)
    scale = max(abs(lo), abs(hi))
    for _ in range(200):
        mid = 0.5 * (a + b)
        below = sturm_count(op.diag[:, None] + 0.0 * mid[None, :], op.off, mid)
        # eigenvalue idx lies below mid iff more than idx eigenvalues are below mid
        left_side = below > idx
        b = np.where(left_side, mid, b)
        a = np.where(left_side, a, mid)
        if np.all(b - a <= rtol * np.maximum(np.abs(a) + np.abs(b), scale * 1e-3)):
            break
    return 0.5 * (a + b)


def lowest_eigenvalues(op: TridiagonalOperator, k: int, method: str = "bisection") -> list[float]:
    """The ``k`` algebraically smallest eigenvalues of ``op``.

    ``method="bisection"`` uses this module's Sturm bisection;
    ``method="lapack"`` delegates to LAPACK's ``stebz``, also a Sturm-sequence
    bisection, which is much faster on large grids.
    """
    if k < 1:
        raise DomainError("k must be at least 1")
    if k > op.size:
        raise DomainError(f"k={k} exceeds the matrix dimension {op.size}")
    if method == "bisection":
        return [float(v) for v in bisect_eigenvalues(op, k)]
    if method == "lapack":
        vals = eigh_tridiagonal(
            op.diag, op.off, eigvals_only=True, select="i", select_range=(0, k - 1), lapack_driver="stebz"
        )
        return [float(v) for v in vals]
    raise DomainError(f"unknown eigenvalue method {method!r}")


def eigenvector(op: TridiagonalOperator, index: int) -> np.ndarray:
    _, vec = eigh_tridiagonal(op.diag, op.off, select="i", select_range=(index, index))
    return vec[:, 0]


def count_nodes(values: np.ndarray, rel_floor: float = 1e-8) -> int:
    """Sign changes of ``values``, ignoring entries below ``rel_floor * max|values|``."""
    v = np.asarray(values, dtype=float)
    floor = rel_floor * float(np.max(np.abs(v)))
    v = v[np.abs(v) > floor]
    return int(np.count_nonzero(np.signbit(v[1:]) != np.signbit(v[:-1])))


class _Problem:
    """Discretized family ``L_E`` on one grid, for fixed quantum numbers."""

    def __init__(self, p, n_r, gamma, cfg, centrifugal, level, x_max):
        self.p = p
        self.n_r = n_r
        self.x, self.h = _grid(cfg, level, x_max)
        cent, self.sech2 = _potential_parts(self.x, gamma, centrifugal)
        self.base = 2.0 / self.h**2 + cent
        self.off = np.full(self.x.size - 1, -1.0 / self.h**2)

    def above(self, energies: np.ndarray) -> np.ndarray:
        """True where ``Lambda_{n_r}(E) + eps^2(E) > 0``, i.e. below the level."""
        eps2, delta = _eps2_delta(energies, self.p)
        diag = self.base[:, None] - self.sech2[:, None] * delta[None, :]
        return sturm_count(diag, self.off, -eps2) <= self.n_r

    def multisect(self, a: float, b: float, rtol: float, k: int) -> tuple[float, float]:
        while b - a > rtol * max(abs(a), abs(b)):
            trial = a + (b - a) * np.arange(1, k + 1) / (k + 1)
            up = self.above(trial)
            if up.all():
                a = float(trial[-1])
            elif not up.any():
                b = float(trial[0])
            else:
                j = int(np.argmin(up))
                a, b = float(trial[j - 1]) if j > 0 else a, float(trial[j])
        return a, b


def _romberg(values: list[float]) -> float:
    table = [list(values)]
    for j in range(1, len(values)):
        prev = table[-1]
        factor = 4.0**j
        table.append([prev[i + 1] + (prev[i + 1] - prev[i]) / (factor - 1.0) for i in range(len(prev) - 1)])
    return table[-1][0]


@lru_cache(maxsize=1024)
def _oracle(p: ModelParams, n_r: int, gamma: float, cfg: OracleConfig, centrifugal: str) -> OracleResult:
    lo, hi = p.c1 - p.mu, p.mu
    if lo >= hi:
        raise DomainError(f"empty bound-state window: c1 - mu = {lo!r} >= mu = {hi!r}")
    x_max = cfg.resolved_x_max()
    rtol = cfg.tol_energy * 1e-2
    energies = []
    sizes = []
    bracket = None
    for level in range(cfg.refine_levels + 1):
        prob = _Problem(p, n_r, gamma, cfg, centrifugal, level, x_max)
        sizes.append(prob.x.size)
        if bracket is None:
            grid = lo + (hi - lo) * np.arange(cfg.scan_intervals + 1) / cfg.scan_intervals
            grid[-1] = hi
            up = prob.above(grid)
            flips = np.nonzero(up[:-1] & ~up[1:])[0]
            if flips.size == 0:
                top = build_operator(hi, p, QuantumNumbers(n_r, 0, 3), cfg, centrifugal, 0, gamma)
                lam = lowest_eigenvalues(top, n_r + 1, method="lapack")[n_r]
                raise NoBoundState(
                    ExistenceReport(False, -lam, f"oracle: no sign change in {cfg.scan_intervals} subintervals "
                                    f"(Lambda_{n_r}(E=mu) = {lam:.6g})")
                )
            a, b = float(grid[flips[0]]), float(grid[flips[0] + 1])
        else:
            a, b = _expand(prob, bracket, lo, hi)
        a, b = prob.multisect(a, b, rtol, cfg.multisection)
        energy = 0.5 * (a + b)
        energies.append(energy)
        bracket = energy
    order = None
    if len(energies) >= 3:
        d1, d2 = energies[0] - energies[1], energies[1] - energies[2]
        if d1 != 0 and d2 != 0 and d1 / d2 > 0:
            order = math.log2(d1 / d2)
    return OracleResult(_romberg(energies), tuple(energies), order, tuple(sizes), x_max)


def _expand(prob: _Problem, center: float, lo: float, hi: float) -> tuple[float, float]:
    width = 1e-3 * abs(center) or 1e-12
    while True:
        a, b = max(lo, center - width), min(hi, center + width)
        up = prob.above(np.array([a, b]))
        if up[0] and not up[1]:
            return a, b
        if a == lo and b == hi:
            raise DomainError("lost the level bracket while refining the grid")
        width *= 4.0


def oracle_solve(
    p: ModelParams, q: QuantumNumbers, cfg: OracleConfig = OracleConfig(), centrifugal: str = "sinh",
    gamma: float | None = None,
) -> OracleResult:
    g = float(q.gamma) if gamma is None else float(gamma)
    return _oracle(p, int(q.n_r), g, cfg, centrifugal)


def self_consistent_energy(p: ModelParams, q: QuantumNumbers, cfg: OracleConfig = OracleConfig()) -> float:
    """Energy at which the ``n_r``-th finite-difference eigenvalue meets ``-eps(E)^2``.

    Raises ``NoBoundState`` if the window scan finds no crossing.
    """
    return oracle_solve(p, q, cfg).energy


def approximation_gap(p: ModelParams, q: QuantumNumbers, cfg: OracleConfig = OracleConfig(),
                      gamma: float | None = None) -> tuple[float, float]:
    """Energies with the ``gamma/sinh^2`` barrier and with the exact ``gamma/x^2`` one."""
    return (
        oracle_solve(p, q, cfg, "sinh", gamma).energy,
        oracle_solve(p, q, cfg, "exact", gamma).energy,
    )


def ode_residual(rf) -> float:
    """Relative L2 residual of the upper-component equation on ``rf``'s grid.

    ``rf.grid`` must be uniform in ``r``. The residual
    ``F'' - (gamma/sinh^2 - delta/cosh^2 + eps^2) F`` (derivatives in
    ``x = alpha r``, second-order central differences, interior nodes) is
    measured relative to the L2 norm of the ``F''`` term.
    """
    r = np.asarray(rf.grid, dtype=float)
    F = np.asarray(rf.upper, dtype=float)
    if r.size < 100:
        raise DomainError("ode_residual needs at least 100 grid points")
    sp = rf.point
    x = sp.params.alpha * r
    steps = np.diff(x)
    h = float(steps.mean())
    if np.max(np.abs(steps - h)) > 1e-9 * h:
        raise DomainError("ode_residual needs a grid uniform in r")
    # three-point formula on the nodes actually evaluated, so rounding in
    # x = alpha r does not masquerade as curvature
    hm, hp = steps[:-1], steps[1:]
    d2 = 2.0 * ((F[2:] - F[1:-1]) / hp - (F[1:-1] - F[:-2]) / hm) / (hp + hm)
    xi, Fi = x[1:-1], F[1:-1]
    gamma = float(sp.q.gamma)
    with np.errstate(over="ignore"):
        pot = (gamma / np.sinh(xi) ** 2 - sp.delta / np.cosh(xi) ** 2 + sp.eps**2) * Fi
    scale = float(np.linalg.norm(d2))
    if scale == 0.0:
        raise DomainError("ode_residual is undefined for a function with zero curvature")
    return float(np.linalg.norm(d2 - pot)) / scale
