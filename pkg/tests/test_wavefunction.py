import math

import numpy as np
import pytest

from ptdirac.errors import DomainError
from ptdirac.model import ModelParams, QuantumNumbers
from ptdirac.oracle import count_nodes, ode_residual
from ptdirac.specfun import beta
from ptdirac.spectrum import solve_level
from ptdirac.wavefunction import (
    GridSpec,
    jacobi_params,
    lower_G,
    make_grid,
    norm_constant_ground,
    norm_constant_quadrature,
    norm_constant_series,
    norm_constant_with_lower,
    norm_integral_unit,
    sample,
    upper_F,
    upper_F_derivative,
)
from printed_forms import printed_lower

P = ModelParams()


def level(n_r, ell, dim, p=P):
    return solve_level(p, QuantumNumbers(n_r, ell, dim))


def linear_in_x(sp, step):
    count = int(round(30.0 / sp.eps / step))
    return sample(sp, GridSpec(r_max=count * step / sp.params.alpha, count=count, spacing="linear"))


def test_F_vanishes_at_origin(ground_level):
    assert upper_F(0.0, ground_level, 1.0) == 0.0


def test_ground_state_is_nodeless_sech_power(ground_level):
    r = np.linspace(0, 30 / (ground_level.eps * P.alpha), 10**4)[1:]
    F = upper_F(r, ground_level, 1.0)
    x = P.alpha * r
    assert np.all(F > 0)
    expected = np.tanh(x) ** 2 / np.cosh(x) ** ground_level.eps
    assert np.allclose(F, expected, rtol=1e-12, atol=0)


@pytest.mark.parametrize("n_r,ell,dim", [(1, 0, 3), (1, 1, 3), (2, 0, 4), (3, 0, 5)])
def test_node_count(n_r, ell, dim):
    sp = level(n_r, ell, dim)
    rf = sample(sp, GridSpec(count=10**4, spacing="linear"))
    assert count_nodes(rf.upper) == n_r


@pytest.mark.parametrize("n_r,ell,dim", [(0, 0, 3), (1, 1, 4), (2, 0, 5)])
def test_leading_power_at_origin(n_r, ell, dim):
    sp = level(n_r, ell, dim)
    r = np.array([1e-3, 2e-3, 4e-3]) / P.alpha
    F = np.abs(upper_F(r, sp, 1.0))
    slopes = np.diff(np.log(F)) / np.diff(np.log(r))
    kappa = float(sp.q.kappa)
    assert np.all(np.abs(slopes - (kappa + 1)) <= 0.02 * (kappa + 1))


def test_derivative_matches_differences():
    sp = level(2, 1, 4)
    r = np.linspace(0.1, 3.0, 30) / P.alpha
    h = 1e-6 / P.alpha
    fd = (upper_F(r + h, sp, 1.0) - upper_F(r - h, sp, 1.0)) / (2 * h)
    dF = upper_F_derivative(r, sp, 1.0)
    assert np.max(np.abs(dF - fd)) <= 1e-7 * np.max(np.abs(dF))


@pytest.mark.parametrize("n_r,ell,dim", [(0, 0, 3), (1, 0, 3), (2, 1, 5)])
def test_lower_component_matches_differences(n_r, ell, dim):
    from ptdirac.checks import g_fd_deviation

    assert g_fd_deviation(level(n_r, ell, dim)) <= 1e-6


def test_lower_component_small_r(ground_level):
    # G ~ (2 kappa + 1) alpha^{kappa+1} r^kappa / (mu + E - c1) for F ~ (alpha r)^{kappa+1}
    r = 1e-4 / P.alpha
    kappa = float(ground_level.q.kappa)
    lead = (2 * kappa + 1) * P.alpha ** (kappa + 1) * r**kappa / ground_level.energy
    assert lower_G(r, ground_level, 1.0) == pytest.approx(lead, rel=1e-6)
    assert lower_G(0.0, ground_level, 1.0) == 0.0


def test_lower_component_decays(ground_level):
    # far out G ~ -eps alpha F, so successive unit steps in alpha r shrink by e^-eps
    eps = ground_level.eps
    x = np.array([20.0, 21.0, 22.0])
    G = lower_G(x / P.alpha, ground_level, 1.0)
    assert np.all(G < 0)
    assert G[1] / G[0] == pytest.approx(math.exp(-eps), rel=2e-3)
    assert G[2] / G[1] == pytest.approx(math.exp(-eps), rel=2e-3)


def test_printed_lower_component_disagrees_with_first_order_relation():
    # The printed coefficient carries an alpha*kappa/artanh(sqrt s) term with no F
    # factor; against (d/dr + kappa/r) F / (mu + E - c1) it is off by orders of
    # magnitude, so it is kept out of the package.
    for q in [(0, 0, 3), (1, 0, 3)]:
        sp = level(*q)
        c = norm_constant_series(sp)
        r = np.linspace(0, 30 / (sp.eps * P.alpha), 2001)[1:]
        G = lower_G(r, sp, c)
        gap = np.max(np.abs(G - printed_lower(r, sp, c))) / np.max(np.abs(G))
        assert gap > 1.0


def test_lower_component_singular_denominator():
    sp = level(0, 0, 3)
    odd = type(sp)(**{**sp.__dict__, "energy": 0.0})
    with pytest.raises(DomainError):
        lower_G(1.0, odd, 1.0)


def test_ground_closed_form(ground_level):
    c0 = norm_constant_ground(ground_level)
    assert c0 == pytest.approx(math.sqrt(2 * P.alpha / beta(2.5, ground_level.eps)), rel=1e-15)
    assert c0 == pytest.approx(0.13265, abs=5e-6)
    assert norm_constant_series(ground_level) == pytest.approx(c0, rel=1e-14)


@pytest.mark.parametrize("n_r,ell,dim", [(0, 0, 3), (1, 1, 3), (2, 0, 4), (3, 1, 5)])
def test_series_matches_quadrature(n_r, ell, dim):
    sp = level(n_r, ell, dim, P.with_alpha(1e-3))
    cs = norm_constant_series(sp)
    assert norm_constant_quadrature(sp) == pytest.approx(cs, rel=1e-8)
    value, _ = norm_integral_unit(sp)
    assert cs * cs * value == pytest.approx(1.0, abs=1e-10)


def test_printed_jacobi_parameter_breaks_the_radial_equation():
    sp = level(1, 0, 3)
    assert jacobi_params(sp, "corrected").a == pytest.approx(float(sp.q.kappa) + 0.5)
    good = linear_in_x(sp, 1e-4)
    assert ode_residual(good) <= 1e-6
    r = good.grid
    bad = type(good)(sp, r, upper_F(r, sp, 1.0, "printed"), good.lower, 1.0, "series")
    assert ode_residual(bad) > 1e-2


def test_printed_and_corrected_agree_for_ground_state(ground_level):
    r = np.linspace(0, 5e4, 50)
    assert np.array_equal(upper_F(r, ground_level, 1.0, "printed"), upper_F(r, ground_level, 1.0))


def test_ode_residual_is_second_order_for_odd_dimension():
    sp = level(1, 1, 3)
    r1, r2 = ode_residual(linear_in_x(sp, 2e-3)), ode_residual(linear_in_x(sp, 1e-3))
    assert 3.5 < r1 / r2 < 4.5


def test_ode_residual_even_dimension_s_wave_is_first_order():
    # F ~ x^(5/2) near the origin limits the three-point stencil to first order
    sp = level(0, 0, 4)
    r1, r2 = ode_residual(linear_in_x(sp, 2e-3)), ode_residual(linear_in_x(sp, 1e-3))
    assert 1.8 < r1 / r2 < 2.2


def test_ode_residual_detects_a_bump():
    sp = level(0, 0, 3)
    rf = linear_in_x(sp, 1e-4)
    x = P.alpha * rf.grid
    bump = 0.01 * np.max(rf.upper) * np.exp(-((x - 0.3) / 0.05) ** 2)
    bumped = type(rf)(sp, rf.grid, rf.upper + bump, rf.lower, rf.norm_constant, rf.norm_method)
    assert ode_residual(bumped) > 1e-3


def test_ode_residual_rejects_zero_function():
    sp = level(0, 0, 3)
    rf = linear_in_x(sp, 1e-3)
    zero = type(rf)(sp, rf.grid, np.zeros_like(rf.upper), rf.lower, 1.0, "series")
    with pytest.raises(DomainError):
        ode_residual(zero)


def test_sample_defaults(ground_level):
    rf = sample(ground_level, GridSpec(count=1000))
    assert rf.grid[0] == 0.0 and rf.upper[0] == 0.0
    assert np.all(np.isfinite(rf.upper)) and np.all(np.isfinite(rf.lower))
    assert abs(np.trapezoid(rf.upper**2, rf.grid) - 1.0) <= 1e-3
    assert abs(rf.upper[-1]) <= 1e-10 * np.max(np.abs(rf.upper))
    assert rf.norm_method == "series"


def test_two_point_linear_grid(ground_level):
    r = make_grid(ground_level, GridSpec(r_max=10.0, count=2, spacing="linear"))
    assert r.tolist() == [5.0, 10.0]
    rf = sample(ground_level, GridSpec(r_max=10.0, count=2, spacing="linear"))
    assert np.all(np.isfinite(rf.upper))


def test_grid_rejects_bad_spec(ground_level):
    with pytest.raises(DomainError):
        make_grid(ground_level, GridSpec(spacing="cubic"))
    with pytest.raises(DomainError):
        make_grid(ground_level, GridSpec(count=1))


def test_normalizing_with_lower_component():
    sp = level(0, 0, 3, ModelParams(mu=1.0, v0=1.0, s0=1.0, alpha=0.01, c1=0.5))
    rf = sample(sp, GridSpec(count=20000, spacing="linear"), include_lower=True)
    assert rf.norm_method == "quadrature_fg"
    total = np.trapezoid(rf.upper**2 + rf.lower**2, rf.grid)
    assert total == pytest.approx(1.0, abs=2e-3)
    assert norm_constant_with_lower(sp) < norm_constant_series(sp)
