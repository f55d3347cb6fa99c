import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ptdirac.errors import DomainError, NoBoundState
from ptdirac.model import ModelParams, QuantumNumbers
from ptdirac.spectrum import (
    _h_vec,
    existence,
    limiting_energy,
    refine_bracket,
    residual_squared,
    residual_unsquared,
    solve_level,
    spectrum_grid,
)

GROUND = QuantumNumbers(0, 0, 3)
SHALLOW = ModelParams(mu=1.0, v0=1e-4, s0=1e-4, alpha=0.01, c1=1.0)


def test_residual_squared_endpoints(table_params):
    # -(alpha^2/4)(5 - sqrt(8e8))^2 = -(2.5e-9)(28279.27)^2
    assert residual_squared(1.0, table_params, GROUND) == pytest.approx(-1.99929, abs=1e-5)
    assert residual_squared(0.0, table_params, GROUND) == pytest.approx(-4e-8, rel=1e-12)


def test_residual_unsquared_endpoints(table_params):
    assert residual_unsquared(0.0, table_params, GROUND) == 4.0
    assert residual_unsquared(1.0, table_params, GROUND) < 0


def test_residuals_reject_outside_window(table_params):
    with pytest.raises(DomainError):
        residual_unsquared(1.5, table_params, GROUND)
    with pytest.raises(DomainError):
        residual_squared(-0.1, table_params, GROUND)


def test_ground_level(table_params, ground_level):
    assert ground_level.energy == pytest.approx(3.6e-7, rel=1e-4)
    assert ground_level.eps == pytest.approx(6.0, rel=1e-5)
    assert abs(ground_level.residual_at_root) <= 1e-12
    lo, hi = ground_level.bracket
    assert lo <= ground_level.energy <= hi


def test_level_m7(table_params):
    sp = solve_level(table_params, QuantumNumbers(0, 0, 5))
    assert sp.energy == pytest.approx(7.0971e-7, rel=1e-4)
    assert sp.eps == pytest.approx(8.42443, abs=1e-4)


def test_dense_scan_agrees_with_solver(table_params, ground_level):
    grid = np.linspace(0.0, 1.0, 10**6)
    h = _h_vec(grid, table_params, GROUND.m_index)
    k = int(np.nonzero(np.diff(np.signbit(h)))[0][0])
    assert grid[k] <= ground_level.energy <= grid[k + 1]


def test_shallow_well_has_no_level():
    report = existence(SHALLOW, 5)
    assert not report.exists
    assert report.margin == pytest.approx(-2.0, abs=1e-12)
    with pytest.raises(NoBoundState) as info:
        solve_level(SHALLOW, GROUND)
    assert info.value.report.margin == pytest.approx(-2.0, abs=1e-12)


def test_empty_window_is_a_domain_error():
    with pytest.raises(DomainError):
        solve_level(ModelParams(mu=1.0, c1=2.5), GROUND)


@pytest.mark.parametrize("m,u", [(5, 36.0), (7, ((7 + math.sqrt(97)) / 2) ** 2), (1, 1.0)])
def test_limiting_energy(m, u):
    p = ModelParams(alpha=1e-3)
    assert limiting_energy(m, p) == pytest.approx(u * 1e-6, rel=1e-13)


def test_limiting_energy_needs_c1_equal_mu():
    with pytest.raises(DomainError):
        limiting_energy(5, ModelParams(c1=0.5))


@settings(max_examples=40, deadline=None)
@given(st.floats(1e-6, 1.0 - 1e-6))
def test_m_index_invariance(E):
    p = ModelParams()
    a, b = QuantumNumbers(1, 0, 3), QuantumNumbers(0, 0, 7)
    assert a.m_index == b.m_index
    assert residual_unsquared(E, p, a) == residual_unsquared(E, p, b)
    assert residual_squared(E, p, a) == residual_squared(E, p, b)


def test_squared_condition_holds_at_root(ground_level, table_params):
    assert abs(residual_squared(ground_level.energy, table_params, GROUND)) <= 1e-10


def test_refine_bracket_on_a_simple_function():
    root, _, iters = refine_bracket(lambda x: x**3 - 2.0, 0.0, 2.0, -2.0, 6.0, rtol=1e-15)
    assert root == pytest.approx(2 ** (1 / 3), rel=1e-14)
    assert iters < 100


def test_grid_shape_and_order(table_params):
    rows = spectrum_grid(table_params, (3, 4, 5), range(1, 6), (1e-4, 1e-3, 5e-3, 1e-2))
    assert len(rows) == 60
    assert [(r.dim, r.n) for r in rows[:5]] == [(3, 1)] * 4 + [(3, 2)]
    assert all(r.ok for r in rows)
    by_key = {(r.dim, r.n, r.alpha): r.point.energy for r in rows}
    for alpha in (1e-4, 1e-3, 5e-3, 1e-2):
        assert by_key[(3, 2, alpha)] == by_key[(5, 1, alpha)]
        series = [by_key[(3, n, alpha)] for n in range(1, 6)]
        assert series == sorted(series)


def test_grid_records_absent_cells():
    rows = spectrum_grid(SHALLOW, (3,), (1,), (0.01,))
    assert not rows[0].ok
    assert rows[0].report.margin == pytest.approx(-2.0)
