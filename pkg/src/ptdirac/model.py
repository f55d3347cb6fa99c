"""Physical inputs, quantum-number bookkeeping and the potential functions.

Natural units (hbar = c = 1). Energies, masses and depths share one unit;
``alpha`` is an inverse length. Everything here is a pure function of
immutable inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class ModelParams:
    """Mass, potential depths, range parameter and the spin-symmetry constant.

    The vector and scalar wells are ``-v0/cosh^2(alpha r)`` and
    ``-s0/cosh^2(alpha r)``; ``c1`` is the constant value of V - S.
    """

    mu: float = 1.0
    v0: float = 1.0
    s0: float = 1.0
    alpha: float = 1e-4
    c1: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError(f"alpha must be positive, got {self.alpha!r}")
        if not self.mu > 0:
            raise DomainError(f"mu must be positive, got {self.mu!r}")
        if not self.v0 + self.s0 > 0:
            raise DomainError(
                f"v0 + s0 must be positive (attractive well), got {self.v0 + self.s0!r}"
            )

    @property
    def depth(self) -> float:
        """Combined depth ``v0 + s0`` of the Sigma well."""
        return self.v0 + self.s0

    @property
    def window(self) -> tuple[float, float]:
        """Energy interval on which the decay exponent is real, order-normalized."""
        lo, hi = self.c1 - self.mu, self.mu
        return (lo, hi) if lo <= hi else (hi, lo)

    def with_alpha(self, alpha: float) -> "ModelParams":
        return ModelParams(mu=self.mu, v0=self.v0, s0=self.s0, alpha=alpha, c1=self.c1)


def kappa_from(ell: int, dim: int, sign: int = 1) -> Fraction:
    """Spin-orbit quantum number ``(2 ell + dim - 1)/2`` as an exact rational.

    Only the positive branch is supported; ``sign=-1`` is rejected.
    """
    if sign != 1:
        raise DomainError("only the positive kappa branch (2l+D-1)/2 is implemented")
    if int(dim) != dim or dim < 2:
        raise DomainError(f"dimension must be an integer >= 2, got {dim!r}")
    if int(ell) != ell or ell < 0:
        raise DomainError(f"ell must be a non-negative integer, got {ell!r}")
    return Fraction(2 * int(ell) + int(dim) - 1, 2)


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial node count, orbital quantum number and dimension.

    Derived quantities are computed once: ``kappa`` and ``gamma`` exactly,
    the principal number ``n = 2 n_r + ell + 1`` and ``m_index = 2 n + dim``,
    the only combination the energy depends on.
    """

    n_r: int
    ell: int
    dim: int
    kappa: Fraction = field(init=False, repr=False)
    gamma: Fraction = field(init=False, repr=False)
    n: int = field(init=False, repr=False)
    m_index: int = field(init=False, repr=False)

    def __post_init__(self):
        if int(self.n_r) != self.n_r or self.n_r < 0:
            raise DomainError(f"n_r must be a non-negative integer, got {self.n_r!r}")
        kappa = kappa_from(self.ell, self.dim)
        n = 2 * int(self.n_r) + int(self.ell) + 1
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "gamma", kappa * (kappa + 1))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m_index", 2 * n + int(self.dim))

    @classmethod
    def from_principal(cls, n: int, dim: int) -> "QuantumNumbers":
        """Canonical labels for principal ``n``: ``n_r = (n-1)//2``, ``ell = (n-1) % 2``."""
        if int(n) != n or n < 1:
            raise DomainError(f"principal quantum number must be >= 1, got {n!r}")
        return cls(n_r=(n - 1) // 2, ell=(n - 1) % 2, dim=dim)


@dataclass(frozen=True)
class DimensionlessState:
    eps: float
    delta: float
    energy: float


def delta_sigma_at(r, p: ModelParams):
    """Return ``(Delta(r), Sigma(r))`` for the modified Poschl-Teller pair.

    ``Delta = V - S = (s0 - v0)/cosh^2``, ``Sigma = V + S = -(v0 + s0)/cosh^2``.
    Accepts scalars or arrays; large ``alpha r`` underflows cleanly to zero.
    """
    sech2 = _sech2(p.alpha * r)
    return (p.s0 - p.v0) * sech2, -(p.v0 + p.s0) * sech2


def _sech2(x):
    # 1/cosh^2 without overflow: 4 e^{-2|x|} / (1 + e^{-2|x|})^2
    t = np.exp(-2.0 * np.abs(x))
    out = 4.0 * t / (1.0 + t) ** 2
    return float(out) if np.ndim(out) == 0 else out


def centrifugal_pair(r: float, alpha: float) -> tuple[float, float]:
    """Exact centrifugal factor ``1/r^2`` and its ``alpha^2/sinh^2(alpha r)`` stand-in."""
    if not r > 0:
        raise DomainError("centrifugal terms diverge at r = 0")
    return 1.0 / r**2, alpha**2 / math.sinh(alpha * r) ** 2


def dimensionless_of(energy: float, p: ModelParams, q: QuantumNumbers | None = None) -> DimensionlessState:
    """Decay exponent ``eps`` and well strength ``delta`` at energy ``energy``.

    ``eps^2 alpha^2 = (mu - E)(mu + E - c1)`` and
    ``delta alpha^2 = (v0 + s0)(E + mu - c1)``. ``q`` is accepted for symmetry
    with the other operations; neither quantity depends on it.
    """
    upper = p.mu - energy
    lower = energy + (p.mu - p.c1)
    prod = upper * lower
    if prod < 0:
        bad = "(mu - E)" if upper < 0 else "(mu + E - c1)"
        raise DomainError(
            f"E={energy!r} is outside the bound-state window: factor {bad} is negative"
        )
    eps = math.sqrt(prod) / p.alpha
    delta = p.depth * lower / p.alpha**2
    return DimensionlessState(eps=eps, delta=delta, energy=energy)
