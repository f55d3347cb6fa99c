"""Upper and lower radial spinor components of a solved level.

With ``s = tanh^2(alpha r)`` the upper component is

    F(r) = C s^{(kappa+1)/2} (1 - s)^{eps/2} P_{n_r}^{(a, eps)}(1 - 2s)

and the lower one follows from the first-order relation

    G = (dF/dr + kappa F / r) / (mu + E - c1).

The Jacobi parameter that makes ``F`` solve the radial equation for every
``n_r`` is ``a = kappa + 1/2``. The published form uses ``a = kappa - 1/2``;
the two coincide for ``n_r = 0`` only, and ``variant="printed"`` reproduces
the latter for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalFailure
from .quadrature import adaptive_gauss_legendre
from .specfun import JacobiParams, jacobi_derivative, jacobi_eval, log_abs_pochhammer, log_beta
from .spectrum import SpectralPoint

VARIANTS = ("corrected", "printed")


@dataclass(frozen=True)
class GridSpec:
    r_max: float | None = None
    count: int = 1000
    spacing: str = "log"


@dataclass(frozen=True)
class RadialFunction:
    point: SpectralPoint
    grid: np.ndarray
    upper: np.ndarray
    lower: np.ndarray
    norm_constant: float
    norm_method: str


def jacobi_params(sp: SpectralPoint, variant: str = "corrected") -> JacobiParams:
    kappa = float(sp.q.kappa)
    if variant == "corrected":
        a = kappa + 0.5
    elif variant == "printed":
        a = kappa - 0.5
    else:
        raise DomainError(f"variant must be one of {VARIANTS}, got {variant!r}")
    return JacobiParams(int(sp.q.n_r), a, sp.eps)


def _require_bound(sp: SpectralPoint) -> None:
    if not sp.eps > 0:
        raise DomainError(f"the level is not normalizable: eps = {sp.eps!r}")


def _pieces(r, sp: SpectralPoint):
    x = sp.params.alpha * np.asarray(r, dtype=float)
    if np.any(x < 0):
        raise DomainError("radii must be non-negative")
    t = np.tanh(x)
    # log sech(x) = -(x + log1p(e^{-2x}) - log 2), stable for large x
    log_sech = -(x + np.log1p(np.exp(-2.0 * x)) - math.log(2.0))
    return x, t, np.exp(sp.eps * log_sech)


def upper_F(r, sp: SpectralPoint, c: float, variant: str = "corrected"):
    """Upper radial component at radius ``r`` (scalar or array)."""
    _require_bound(sp)
    kappa = float(sp.q.kappa)
    _, t, sech_eps = _pieces(r, sp)
    s = t * t
    P = jacobi_eval(jacobi_params(sp, variant), 1.0 - 2.0 * s)
    out = c * t ** (kappa + 1.0) * sech_eps * P
    return float(out) if np.ndim(out) == 0 else out


def upper_F_derivative(r, sp: SpectralPoint, c: float, variant: str = "corrected"):
    """``dF/dr`` by the chain rule through ``s`` and the Jacobi derivative identity."""
    _require_bound(sp)
    kappa = float(sp.q.kappa)
    jp = jacobi_params(sp, variant)
    _, t, sech_eps = _pieces(r, sp)
    s = t * t
    z = 1.0 - 2.0 * s
    P = jacobi_eval(jp, z)
    dP = jacobi_derivative(jp, z)
    bracket = (kappa + 1.0) * (1.0 - s) * P - sp.eps * s * P - 4.0 * s * (1.0 - s) * dP
    out = sp.params.alpha * c * t**kappa * sech_eps * bracket
    return float(out) if np.ndim(out) == 0 else out


def lower_G(r, sp: SpectralPoint, c: float, variant: str = "corrected"):
    """Lower radial component ``(F' + kappa F / r) / (mu + E - c1)``; zero at ``r = 0``."""
    p = sp.params
    denom = sp.energy + (p.mu - p.c1)
    if denom == 0.0:
        raise DomainError("mu + E - c1 vanishes: the lower component is singular")
    r_arr = np.asarray(r, dtype=float)
    kappa = float(sp.q.kappa)
    dF = np.asarray(upper_F_derivative(r_arr, sp, c, variant))
    F = np.asarray(upper_F(r_arr, sp, c, variant))
    safe_r = np.where(r_arr > 0, r_arr, 1.0)
    centr = np.where(r_arr > 0, kappa * F / safe_r, 0.0)
    out = (dF + centr) / denom
    return float(out) if np.ndim(out) == 0 else out


def norm_constant_ground(sp: SpectralPoint) -> float:
    """``C_0 = sqrt(2 alpha / B(kappa + 3/2, eps))``."""
    _require_bound(sp)
    kappa = float(sp.q.kappa)
    return math.exp(0.5 * (math.log(2.0 * sp.params.alpha) - log_beta(kappa + 1.5, sp.eps)))


def norm_constant_series(sp: SpectralPoint, variant: str = "corrected") -> float:
    """Normalization constant from the terminating double series.

    ``C^2 N sum_{i,j} t_i t_j B(kappa + i + j + 3/2, eps) = alpha`` with
    ``t_i = (-n)_i (a + eps + n + 1)_i / ((a + 1)_i i!)`` and
    ``N = [Gamma(n + a + 1) / (n! Gamma(a + 1))]^2 / 2``. Every factor is
    carried as a logarithm with a sign and exponentiated once.
    """
    _require_bound(sp)
    jp = jacobi_params(sp, variant)
    n, a, eps = jp.degree, jp.a, jp.b
    kappa = float(sp.q.kappa)
    log_n = math.log(0.5) + 2.0 * (math.lgamma(n + a + 1.0) - math.lgamma(n + 1.0) - math.lgamma(a + 1.0))
    coef = []
    for i in range(n + 1):
        l1, s1 = log_abs_pochhammer(-float(n), i)
        l2, s2 = log_abs_pochhammer(a + eps + n + 1.0, i)
        l3, s3 = log_abs_pochhammer(a + 1.0, i)
        coef.append((l1 + l2 - l3 - math.lgamma(i + 1.0), s1 * s2 * s3))
    logs, signs = [], []
    for i, (li, si) in enumerate(coef):
        for j, (lj, sj) in enumerate(coef):
            if si == 0 or sj == 0:
                continue
            logs.append(li + lj + log_beta(kappa + i + j + 1.5, eps))
            signs.append(si * sj)
    ref = max(logs)
    scaled = math.fsum(sg * math.exp(lg - ref) for sg, lg in zip(signs, logs))
    if not scaled > 0:
        raise NumericalFailure(
            "normalization series lost positivity to cancellation; use norm_constant_quadrature"
        )
    return math.exp(0.5 * (math.log(sp.params.alpha) - log_n - math.log(scaled) - ref))


def norm_integral_unit(sp: SpectralPoint, variant: str = "corrected", rtol: float = 1e-14) -> tuple[float, float]:
    """``integral |F|^2 dr`` for ``C = 1``, with its error estimate.

    Substituting ``s = sin^2 t`` turns the measure ``ds / (2 alpha sqrt(s) (1 - s))``
    into ``dt / (alpha cos t)`` and removes the endpoint singularity at ``s = 0``.
    """
    _require_bound(sp)
    jp = jacobi_params(sp, variant)
    kappa = float(sp.q.kappa)
    alpha = sp.params.alpha

    def integrand(t):
        st, ct = np.sin(t), np.cos(t)
        P = jacobi_eval(jp, 1.0 - 2.0 * st * st)
        with np.errstate(divide="ignore", under="ignore"):
            body = st ** (2.0 * kappa + 2.0) * np.where(ct > 0, ct ** (2.0 * sp.eps - 1.0), 0.0)
        return body * P * P / alpha

    return adaptive_gauss_legendre(integrand, 0.0, 0.5 * math.pi, rtol=rtol)


def norm_constant_quadrature(sp: SpectralPoint, variant: str = "corrected") -> float:
    """``C`` such that ``integral |F|^2 dr = 1``, by adaptive Gauss-Legendre."""
    value, _ = norm_integral_unit(sp, variant)
    return 1.0 / math.sqrt(value)


def norm_constant_with_lower(sp: SpectralPoint, variant: str = "corrected") -> float:
    """``C`` such that ``integral (|F|^2 + |G|^2) dr = 1`` (opt-in alternative)."""
    alpha = sp.params.alpha

    def integrand(t):
        st = np.sin(t)
        ct = np.cos(t)
        inside = st < 1.0
        r = np.where(inside, np.arctanh(np.where(inside, st, 0.0)) / alpha, 0.0)
        F = np.asarray(upper_F(r, sp, 1.0, variant))
        G = np.asarray(lower_G(r, sp, 1.0, variant))
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(inside & (ct > 0), (F * F + G * G) / (alpha * ct), 0.0)
        return out

    value, _ = adaptive_gauss_legendre(integrand, 0.0, 0.5 * math.pi, rtol=1e-13)
    return 1.0 / math.sqrt(value)


def default_r_max(sp: SpectralPoint) -> float:
    """``30 / (eps alpha)``: thirty decay lengths."""
    _require_bound(sp)
    return 30.0 / (sp.eps * sp.params.alpha)


def make_grid(sp: SpectralPoint, spec: GridSpec) -> np.ndarray:
    """Radii for ``sample``.

    ``linear``: ``r_max * k / count`` for ``k = 1..count``.
    ``log``: ``r = 0``, then geometric from ``1e-3/alpha`` to ``1/alpha``,
    then uniform out to ``r_max``.
    """
    r_max = default_r_max(sp) if spec.r_max is None else float(spec.r_max)
    if not r_max > 0:
        raise DomainError("r_max must be positive")
    if spec.count < 2:
        raise DomainError("count must be at least 2")
    if spec.spacing == "linear":
        return r_max * np.arange(1, spec.count + 1) / spec.count
    if spec.spacing != "log":
        raise DomainError(f"spacing must be 'linear' or 'log', got {spec.spacing!r}")
    scale = 1.0 / sp.params.alpha
    rest = spec.count - 1
    r_lo = 1e-3 * scale
    if r_max <= scale or rest < 4:
        inner = np.geomspace(min(r_lo, 0.5 * r_max), r_max, rest)
        return np.concatenate([[0.0], inner])
    n_log = rest // 2
    n_lin = rest - n_log
    inner = np.geomspace(r_lo, scale, n_log)
    outer = scale + (r_max - scale) * np.arange(1, n_lin + 1) / n_lin
    return np.concatenate([[0.0], inner, outer])


def sample(sp: SpectralPoint, grid_spec: GridSpec = GridSpec(), variant: str = "corrected",
           include_lower: bool = False) -> RadialFunction:
    """Normalized ``F`` and ``G`` on a radial grid.

    The constant comes from the series, falling back to quadrature if the
    series cancels badly. ``include_lower=True`` normalizes ``F^2 + G^2``
    instead of ``F^2`` alone.
    """
    _require_bound(sp)
    if include_lower:
        c, method = norm_constant_with_lower(sp, variant), "quadrature_fg"
    else:
        try:
            c, method = norm_constant_series(sp, variant), "series"
        except NumericalFailure:
            c, method = norm_constant_quadrature(sp, variant), "quadrature"
    r = make_grid(sp, grid_spec)
    F = np.asarray(upper_F(r, sp, c, variant), dtype=float)
    G = np.asarray(lower_G(r, sp, c, variant), dtype=float)
    return RadialFunction(sp, r, F, G, c, method)
