import math

import numpy as np
import pytest

from ptdirac.errors import DomainError, NoBoundState
from ptdirac.model import ModelParams, QuantumNumbers
from ptdirac.oracle import (
    OracleConfig,
    TridiagonalOperator,
    approximation_gap,
    build_operator,
    count_nodes,
    eigenvector,
    lowest_eigenvalues,
    oracle_solve,
    self_consistent_energy,
    sturm_count,
)
from ptdirac.spectrum import solve_level

P = ModelParams()
GROUND = QuantumNumbers(0, 0, 3)
CFG = OracleConfig()


def test_operator_stencil():
    op = build_operator(3.6e-7, P, GROUND, CFG)
    assert np.all(op.off == -1.0 / op.h**2)
    assert op.size == CFG.points - 1
    assert op.diag.shape == (op.size,)


def test_free_box():
    p = ModelParams(mu=1.0, c1=1.0)
    op = build_operator(0.0, p, GROUND, CFG, gamma=0.0)
    box = CFG.resolved_x_max() - CFG.x_min
    lam = lowest_eigenvalues(op, 2)
    assert lam[0] == pytest.approx((math.pi / box) ** 2, rel=1e-5)
    assert lam[1] / lam[0] == pytest.approx(4.0, rel=1e-4)


def test_diagonal_matrix():
    op = TridiagonalOperator(np.array([1.0, 2.0, 3.0]), np.zeros(2), np.arange(3.0), 1.0)
    assert lowest_eigenvalues(op, 2) == pytest.approx([1.0, 2.0], abs=1e-13)
    assert lowest_eigenvalues(op, 2, method="lapack") == pytest.approx([1.0, 2.0], abs=1e-13)


def test_bisection_matches_lapack():
    op = build_operator(3.6e-7, P, QuantumNumbers(0, 1, 4), CFG)
    a = lowest_eigenvalues(op, 4)
    b = lowest_eigenvalues(op, 4, method="lapack")
    assert a == pytest.approx(b, rel=1e-11)


def test_sturm_count_matches_dense_eigenvalues():
    rng = np.random.default_rng(0)
    diag, off = rng.normal(size=50), rng.normal(size=49)
    vals = np.linalg.eigvalsh(np.diag(diag) + np.diag(off, 1) + np.diag(off, -1))
    for shift in (-2.0, 0.0, 0.7, 3.0):
        assert int(sturm_count(diag, off, shift)) == int(np.sum(vals < shift))


def test_poschl_teller_ladder():
    # gamma = 2, delta = 72 gives -eps^2 levels at 36 and 16
    lam = []
    for level in (0, 1):
        op = build_operator(3.6e-7, P, GROUND, OracleConfig(points=4000 * 2**level))
        lam.append(lowest_eigenvalues(op, 2))
    extrapolated = (4 * np.array(lam[1]) - np.array(lam[0])) / 3
    assert extrapolated[0] == pytest.approx(-36.0, rel=2e-5)
    assert extrapolated[1] == pytest.approx(-16.0, rel=2e-5)


def test_eigenvector_nodes():
    op = build_operator(1.18e-6, P, QuantumNumbers(1, 0, 3), CFG)
    assert count_nodes(eigenvector(op, 0)) == 0
    assert count_nodes(eigenvector(op, 1)) == 1


def test_ground_state_agreement(ground_level):
    res = oracle_solve(P, GROUND, CFG)
    assert abs(res.energy - ground_level.energy) <= 1e-6 * ground_level.energy
    assert 1.8 <= res.observed_order <= 2.2
    assert len(res.level_energies) == CFG.refine_levels + 1
    assert self_consistent_energy(P, GROUND, CFG) == res.energy


def test_degenerate_pair():
    e1 = oracle_solve(P, QuantumNumbers(0, 1, 3), CFG).energy
    e2 = oracle_solve(P, QuantumNumbers(0, 0, 5), CFG).energy
    assert abs(e1 - e2) <= 1e-6 * e2


def test_shallow_well_agrees_with_existence():
    shallow = ModelParams(mu=1.0, v0=1e-4, s0=1e-4, alpha=0.01, c1=1.0)
    with pytest.raises(NoBoundState) as info:
        oracle_solve(shallow, GROUND, CFG)
    assert info.value.report.margin < 0


def test_excited_state_agreement():
    p = P.with_alpha(5e-3)
    q = QuantumNumbers(2, 0, 4)
    assert oracle_solve(p, q, CFG).energy == pytest.approx(solve_level(p, q).energy, rel=1e-6)


def test_gap_vanishes_without_barrier():
    sinh_e, exact_e = approximation_gap(P, GROUND, CFG, gamma=0.0)
    assert sinh_e == exact_e


def test_gap_is_reported_and_nearly_alpha_independent():
    gaps = []
    for alpha in (1e-4, 1e-3, 1e-2):
        sinh_e, exact_e = approximation_gap(P.with_alpha(alpha), GROUND, CFG)
        assert exact_e > sinh_e
        gaps.append((exact_e - sinh_e) / sinh_e)
    # about 4% at every alpha: in x = alpha r the problem hardly depends on alpha
    assert all(0.03 < g < 0.05 for g in gaps)
    assert max(gaps) - min(gaps) < 1e-3


def test_invalid_inputs():
    with pytest.raises(DomainError):
        build_operator(2.0, P, GROUND, CFG)
    with pytest.raises(DomainError):
        build_operator(3.6e-7, P, GROUND, CFG, centrifugal="yukawa")
    with pytest.raises(DomainError):
        lowest_eigenvalues(build_operator(3.6e-7, P, GROUND, CFG), 0)
