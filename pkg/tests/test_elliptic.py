"""Period quadrature, Picard-Fuchs structure, complex continuation."""

import cmath
import math

import numpy as np
import pytest

from raylien.elliptic import (
    ContourObstructionError,
    case_grid,
    oval_geometry,
    periods_complex,
    periods_real,
    pf_continue,
    pf_residual,
    vanishing_cycle_periods,
    wronskians,
)
from raylien.forms import CASES, EIGHT_EXTERIOR, EIGHT_INTERIOR, GLOBAL_CENTER, TRUNCATED_PENDULUM


# -- oval geometry -----------------------------------------------------------


def test_oval_geometry_eight_exterior():
    g = oval_geometry(EIGHT_EXTERIOR, 0.375)
    assert g.x_hi == pytest.approx(math.sqrt(1 + math.sqrt(2.5)), rel=1e-14)
    assert g.x_lo == -g.x_hi
    # oracle: direct root finding on y^2(x) = 2h + x^2 - x^4/2
    roots = np.roots([-0.5, 0.0, 1.0, 0.0, 2 * 0.375])
    real_roots = sorted(r.real for r in roots if abs(r.imag) < 1e-12)
    assert real_roots[-1] == pytest.approx(g.x_hi, rel=1e-12)


def test_oval_geometry_pendulum_saddle_limit():
    g = oval_geometry(TRUNCATED_PENDULUM, 0.25 - 1e-12)
    assert g.x_hi == pytest.approx(1.0, abs=2e-6)


def test_oval_geometry_center_limit():
    g = oval_geometry(GLOBAL_CENTER, 1e-12)
    assert g.x_hi == pytest.approx(0.0, abs=2e-6)


def test_oval_geometry_eight_interior_right_oval():
    g = oval_geometry(EIGHT_INTERIOR, -0.1)
    s = math.sqrt(1 - 0.4)
    assert g.x_lo == pytest.approx(math.sqrt(1 - s), rel=1e-14)
    assert g.x_hi == pytest.approx(math.sqrt(1 + s), rel=1e-14)


def test_oval_geometry_rejects_outside():
    with pytest.raises(ValueError):
        oval_geometry(GLOBAL_CENTER, -1.0)
    with pytest.raises(ValueError):
        oval_geometry(EIGHT_INTERIOR, 0.1)


# -- real periods ------------------------------------------------------------


def test_harmonic_oscillator_limit():
    for h in (1e-4, 1e-5, 1e-6):
        pv = periods_real(GLOBAL_CENTER, h)
        assert pv.I0 / (2 * math.pi * h) == pytest.approx(1.0, abs=5e-4 * math.sqrt(h) / 1e-3 + 4e-4)
        assert pv.I2 / (math.pi * h * h) == pytest.approx(1.0, abs=2e-3)


def test_vanishing_oval_at_the_interior_center():
    pv = periods_real(EIGHT_INTERIOR, -0.25 + 1e-9)
    assert abs(pv.I0) < 1e-7
    assert abs(pv.I2) < 1e-7


@pytest.mark.parametrize("case_name", sorted(CASES), ids=str)
def test_J0_positive_throughout(case_name):
    case = CASES[case_name]
    for h in case_grid(case, 25):
        pv = periods_real(case, float(h))
        assert pv.J0 > 0


@pytest.mark.parametrize(
    "case_name", ["global-center", "truncated-pendulum", "eight-exterior"], ids=str
)
def test_I0_monotone_where_area_grows(case_name):
    case = CASES[case_name]
    hs = case_grid(case, 30)
    vals = [periods_real(case, float(h)).I0 for h in hs]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_quadrature_error_estimates_are_tiny():
    pv = periods_real(EIGHT_EXTERIOR, 1.0, 1e-12)
    assert pv.est_error < 1e-12


def test_finite_difference_oracle_for_J():
    """J = dI/dh by central differences, all four cases (non-PF oracle)."""
    for case_name, h in (
        ("global-center", 0.7),
        ("truncated-pendulum", 0.11),
        ("eight-interior", -0.13),
        ("eight-exterior", 0.9),
    ):
        case = CASES[case_name]
        step = 1e-6
        up = periods_real(case, h + step, 1e-13)
        dn = periods_real(case, h - step, 1e-13)
        pv = periods_real(case, h, 1e-13)
        assert (up.I0 - dn.I0) / (2 * step) == pytest.approx(pv.J0, rel=1e-7)
        assert (up.I2 - dn.I2) / (2 * step) == pytest.approx(pv.J2, rel=1e-7)


# -- Picard-Fuchs ------------------------------------------------------------


@pytest.mark.parametrize("case_name", ["eight-interior", "eight-exterior"], ids=str)
def test_pf_residuals_on_grid(case_name):
    case = CASES[case_name]
    for h in case_grid(case, 20):
        r1, r2 = pf_residual(case, float(h), 1e-12)
        assert r1 <= 1e-11
        assert r2 <= 1e-11


def test_pf_residual_detects_broken_identity():
    pv = periods_real(EIGHT_EXTERIOR, 1.0)
    scale = max(abs(pv.I0), abs(pv.I2), 1.0)
    broken = abs(4 * 1.0 * pv.J0 + pv.J2 - 4.0 * pv.I0) / scale
    assert broken > 1e-2


def test_pf_residual_rejects_other_cases():
    with pytest.raises(ValueError):
        pf_residual(GLOBAL_CENTER, 1.0)


# -- complex continuation ----------------------------------------------------


def test_contour_route_matches_real_axis():
    pr = periods_real(EIGHT_EXTERIOR, 2.0, 1e-12)
    pc = periods_complex(2.0, route="contour")
    for attr in ("I0", "I2", "J0", "J2"):
        assert complex(getattr(pc, attr)) == pytest.approx(
            complex(getattr(pr, attr)), rel=1e-10
        )


@pytest.mark.parametrize("h", [0.5 + 0.3j, 2.0 + 1.0j, 1.0 - 2.0j, 10.0 + 5.0j])
def test_contour_and_pf_routes_agree(h):
    a = periods_complex(h, route="contour")
    b = periods_complex(h, route="pf-ode")
    for attr in ("I0", "I2", "J0", "J2"):
        va, vb = complex(getattr(a, attr)), complex(getattr(b, attr))
        assert va == pytest.approx(vb, rel=1e-9)


def test_conjugate_symmetry():
    a = pf_continue(0.5 + 0.25j)
    b = pf_continue(0.5 - 0.25j)
    assert a.J0.conjugate() == pytest.approx(b.J0, rel=1e-11)
    assert a.J2.conjugate() == pytest.approx(b.J2, rel=1e-11)


def test_rejects_points_on_the_cut():
    with pytest.raises(ValueError):
        periods_complex(-1.0)
    with pytest.raises(ValueError):
        periods_complex(0.0)


def test_large_radius_decay_exponent():
    a = pf_continue(100 + 100j)
    b = pf_continue(1000 + 1000j)
    alpha = math.log(abs(b.J0) / abs(a.J0)) / math.log(10.0)
    assert alpha == pytest.approx(-0.25, abs=0.05)
    # J2/J0 grows like |h|^(1/2), so deg-2 polynomial envelopes keep the
    # growth exponent of ptilde J2/J0 + qtilde within [0, 2.5]
    beta = math.log(abs(b.J2 / b.J0) / abs(a.J2 / a.J0)) / math.log(10.0)
    assert beta == pytest.approx(0.5, abs=0.05)


def test_branch_tags():
    assert pf_continue(1.0 + 1.0j).branch_tag == "plus-side"
    assert pf_continue(1.0 - 1.0j).branch_tag == "minus-side"
    assert vanishing_cycle_periods(-0.1).branch_tag == "vanishing-cycle"


# -- Picard-Lefschetz jump and Wronskians -------------------------------------


def test_picard_lefschetz_jump():
    """J0(h + i d) - J0(h - i d) tends to +-2 * (vanishing-cycle J0)."""
    h = -0.1
    vc = vanishing_cycle_periods(h)
    rel = []
    for d in (1e-3, 2.5e-4):
        up = pf_continue(complex(h, d))
        dn = pf_continue(complex(h, -d))
        jump = up.J0 - dn.J0
        rel.append(min(abs(jump - 2 * vc.J0), abs(jump + 2 * vc.J0)) / abs(jump))
    assert rel[0] < 5e-3
    assert rel[1] < rel[0] / 2  # shrinks roughly linearly in the offset


def test_wronskian_imaginary_and_constant():
    w1 = [wronskians(h)[0] for h in (-0.20, -0.15, -0.10)]
    for w in w1:
        assert abs(w.real) <= 1e-6 * abs(w)
    spread = max(abs(a - b) for a in w1 for b in w1)
    assert spread <= 1e-6 * abs(w1[0])
    assert all(wronskians(h)[1] == "W1" for h in (-0.2, -0.1))


def test_wronskian_tags_and_ratio():
    w1, tag1 = wronskians(-0.15)
    w2, tag2 = wronskians(-1.0)
    assert (tag1, tag2) == ("W1", "W2")
    ratio = w1 / w2
    assert abs(ratio.imag) <= 1e-6 * abs(ratio)
    assert ratio.real > 0
    assert min(abs(ratio.real - 2.0), abs(ratio.real - 2.0 / 3.0)) < 1e-5


def test_wronskian_rejects_bad_h():
    with pytest.raises(ValueError):
        wronskians(0.5)
    with pytest.raises(ValueError):
        wronskians(-0.25)
