"""Poincare returns, limit-cycle detection, leading-order validation."""

import math
from fractions import Fraction as F

import numpy as np
import pytest

from raylien.forms import EIGHT_INTERIOR, GLOBAL_CENTER, TRUNCATED_PENDULUM
from raylien.melnikov import ParamArc, lambdas_for_first_order, melnikov
from raylien.simulate import (
    EscapeError,
    SimConfig,
    find_limit_cycles,
    melnikov_validation,
    poincare_return,
    section_range,
    section_x_for_h,
)
from raylien.zeros import VElement, count_zeros_real
from raylien.exactalg import PolyU


def test_energy_conserved_at_zero_eps():
    cfg = SimConfig(GLOBAL_CENTER, (0,) * 6, 0.0)
    for x0 in (0.4, 1.0, 2.2):
        s = poincare_return(cfg, x0)
        assert abs(s.d) < 1e-10
        assert s.return_time > 0


def test_return_time_near_harmonic_period():
    cfg = SimConfig(GLOBAL_CENTER, (0,) * 6, 0.0)
    s = poincare_return(cfg, 1e-3)
    assert s.return_time == pytest.approx(2 * math.pi, rel=1e-4)


def test_lambda1_pumps_energy():
    cfg = SimConfig(GLOBAL_CENTER, (1, 0, 0, 0, 0, 0), 1e-3)
    for x0 in (0.5, 1.0, 1.5):
        assert poincare_return(cfg, x0).d > 0


def test_section_validation():
    cfg = SimConfig(GLOBAL_CENTER, (0,) * 6, 0.0)
    with pytest.raises(ValueError):
        poincare_return(cfg, -1.0)
    cfg_tp = SimConfig(TRUNCATED_PENDULUM, (0,) * 6, 0.0)
    with pytest.raises(ValueError):
        poincare_return(cfg_tp, 1.5)


def test_escape_near_separatrix():
    # outside the pendulum's oval region the orbit never returns
    cfg = SimConfig(TRUNCATED_PENDULUM, (0,) * 6, 0.0, max_time=30.0)
    with pytest.raises(EscapeError):
        poincare_return(cfg, 0.999999)


def test_central_symmetry_of_eight_interior():
    """Displacement at (x0, 0) equals the reflected trajectory's at (-x0, 0)."""
    from scipy.integrate import solve_ivp

    cfg = SimConfig(EIGHT_INTERIOR, (0.3, -0.2, 0.5, 0.1, -0.4, 0.2), 1e-3)
    right = poincare_return(cfg, 1.25)

    f = cfg.rhs()

    def yev(t, s):
        return s[1]

    yev.terminal = True
    state = (-1.25, 0.0)
    t_acc = 0.0
    for direction in (-1, +1):  # mirrored crossing orientations
        yev.direction = direction
        sol = solve_ivp(f, (0, 400), state, method="DOP853", rtol=cfg.rtol,
                        atol=cfg.atol, events=yev)
        t_acc += float(sol.t_events[0][0])
        state = tuple(sol.y_events[0][0])
    d_left = cfg.hamiltonian(*state) - cfg.hamiltonian(-1.25, 0.0)
    assert d_left == pytest.approx(right.d, rel=1e-9, abs=1e-14)
    assert t_acc == pytest.approx(right.return_time, rel=1e-9)


def test_no_cycles_at_zero_eps():
    cfg = SimConfig(GLOBAL_CENTER, (0,) * 6, 0.0)
    assert find_limit_cycles(cfg, grid=100, x_window=(0.3, 2.0)) == []


def test_e6_arc_has_no_cycles_matching_oracle():
    """lambda_6 alone: the leading coefficient is positive on the whole
    annulus (it vanishes to fourth order at h = 0 but stays one-signed),
    so the simulator must find no cycles."""
    res = melnikov(ParamArc.linear([0, 0, 0, 0, 0, 1]), GLOBAL_CENTER)
    oracle = count_zeros_real(VElement(res.p, res.q, GLOBAL_CENTER))
    assert oracle.count == 0
    cfg = SimConfig(GLOBAL_CENTER, (0, 0, 0, 0, 0, 1.0), 1e-3)
    cycles = find_limit_cycles(
        cfg, grid=100, x_window=(section_x_for_h(GLOBAL_CENTER, 0.05),
                                section_x_for_h(GLOBAL_CENTER, 8.0))
    )
    assert cycles == []


def test_single_cycle_constructed_configuration():
    p = PolyU.zero("h")
    q = PolyU.from_coeff_list([F(-1), F(1)], "h")  # q = h - 1: one zero at 1
    lam = lambdas_for_first_order(p, q, GLOBAL_CENTER)
    oracle = count_zeros_real(VElement(p, q, GLOBAL_CENTER))
    assert oracle.count == 1
    cfg = SimConfig(GLOBAL_CENTER, tuple(float(c) for c in lam), 2e-3)
    cycles = find_limit_cycles(
        cfg, grid=100, x_window=(section_x_for_h(GLOBAL_CENTER, 0.1),
                                section_x_for_h(GLOBAL_CENTER, 5.0))
    )
    assert len(cycles) == 1
    assert cycles[0][0] == pytest.approx(1.0, abs=5e-3)


def test_constructed_two_cycle_configuration():
    p = PolyU.zero("h")
    q = PolyU.from_coeff_list([F(-3, 4), F(1), F(-1, 4)], "h")  # -(h-1)(h-3)/4
    lam = lambdas_for_first_order(p, q, GLOBAL_CENTER)
    oracle = count_zeros_real(VElement(p, q, GLOBAL_CENTER))
    assert oracle.count == 2
    cfg = SimConfig(GLOBAL_CENTER, tuple(float(c) for c in lam), 5e-3)
    cycles = find_limit_cycles(
        cfg, grid=100, x_window=(section_x_for_h(GLOBAL_CENTER, 0.2),
                                section_x_for_h(GLOBAL_CENTER, 6.0))
    )
    assert len(cycles) == 2
    for (h_star, stab), (h_pred, _) in zip(cycles, oracle.locations):
        assert h_star == pytest.approx(h_pred, abs=0.02)
    assert {s for _, s in cycles} == {"stable", "unstable"}


def test_melnikov_validation_first_order_arc():
    res = melnikov(ParamArc.linear([0, 0, 0, 0, 0, 1]), GLOBAL_CENTER)
    rep = melnikov_validation(
        GLOBAL_CENTER, (0, 0, 0, 0, 0, 1.0), res.order, res.p, res.q,
        epsilons=(1e-2, 5e-3, 2.5e-3), n_grid=5,
    )
    devs = rep["max_relative_deviation"]
    assert devs[0] < 0.2
    assert devs[-1] < devs[0]
    assert rep["convergence_order"] > 0.8


def test_melnikov_validation_zero_arc():
    zero_p = PolyU.zero("h")
    rep = melnikov_validation(
        GLOBAL_CENTER, (0,) * 6, 1, zero_p, zero_p,
        epsilons=(1e-2,), n_grid=3,
    )
    assert rep["max_relative_deviation"][0] < 1e-6
