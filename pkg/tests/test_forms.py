"""One-forms, exterior derivative, and the canonical reduction engines."""

import random
from fractions import Fraction as F

import pytest

from raylien.exactalg import PolyU, PolyXY
from raylien.forms import (
    CASES,
    EIGHT_EXTERIOR,
    EIGHT_INTERIOR,
    GLOBAL_CENTER,
    SIGN_CASES,
    TRUNCATED_PENDULUM,
    CanonicalDecomposition,
    DecompositionError,
    OneForm,
    exterior_derivative,
    perturbation_form,
    reduce,
    verify_decomposition,
)


def mono_form(i, j, c=1):
    return OneForm(PolyXY.monomial(i, j, c))


def test_exterior_derivative_xy3():
    d = exterior_derivative(PolyXY.monomial(1, 3))
    assert d.P == PolyXY.monomial(0, 3)
    assert d.Q == PolyXY.monomial(1, 2, 3)


def test_exterior_derivative_eight_loop_hamiltonian():
    d = exterior_derivative(EIGHT_INTERIOR.hamiltonian())
    assert d.P == PolyXY({(1, 0): F(-1), (3, 0): F(1)})
    assert d.Q == PolyXY.monomial(0, 1)


def test_exterior_derivative_constant_is_zero():
    assert exterior_derivative(PolyXY.const(5)).is_zero()


def test_perturbation_form_basis_vectors():
    e3 = perturbation_form([0, 0, 1, 0, 0, 0])
    assert e3.P == PolyXY.monomial(0, 3) and e3.Q.is_zero()
    e6 = perturbation_form([0, 0, 0, 0, 0, 1])
    assert e6.P == PolyXY.monomial(6, 1)
    full = perturbation_form([1] * 6)
    assert len(full.P.coeffs) == 6


def test_annulus_case_registry():
    assert CASES["eight-exterior"].zero_bound == 6
    for name in ("global-center", "truncated-pendulum", "eight-interior"):
        assert CASES[name].zero_bound == 5
    assert (GLOBAL_CENTER.a, GLOBAL_CENTER.b) == (1, 1)
    assert (TRUNCATED_PENDULUM.a, TRUNCATED_PENDULUM.b) == (1, -1)
    assert (EIGHT_INTERIOR.a, EIGHT_INTERIOR.b) == (-1, 1)
    assert EIGHT_INTERIOR.h_lo == -0.25 and EIGHT_INTERIOR.h_hi == 0.0
    assert TRUNCATED_PENDULUM.h_hi == 0.25


# -- reduction ---------------------------------------------------------------


def test_reduce_y3_global_center():
    d = reduce(mono_form(0, 3), GLOBAL_CENTER)
    assert d.u == PolyU({0: F(-3, 7)}, "H")
    assert d.v == PolyU({1: F(12, 7)}, "H")


def test_reduce_x4y_global_center():
    d = reduce(mono_form(4, 1), GLOBAL_CENTER)
    assert d.u == PolyU({0: F(-8, 7)}, "H")
    assert d.v == PolyU({1: F(4, 7)}, "H")


def test_reduce_x2y5_eight_loop():
    d = reduce(mono_form(2, 5), EIGHT_INTERIOR)
    assert d.u == PolyU({2: F(80, 39), 1: F(3620, 3003), 0: F(160, 1001)}, "H")
    assert d.v == PolyU({2: F(1600, 3003), 1: F(80, 1001)}, "H")


def test_reduce_x2y2_is_relatively_exact():
    d = reduce(mono_form(2, 2), GLOBAL_CENTER)
    assert d.uv_is_zero()
    assert not d.r.is_zero() or not d.R.is_zero()


def test_reduce_zero_form():
    d = reduce(OneForm.zero(), GLOBAL_CENTER)
    assert d.uv_is_zero() and d.r.is_zero() and d.R.is_zero()


def test_reduce_handles_dy_component():
    # d(x y^3) = y^3 dx + 3 x y^2 dy is exact: (u, v) must vanish
    om = exterior_derivative(PolyXY.monomial(1, 3))
    d = reduce(om, EIGHT_INTERIOR)
    assert d.uv_is_zero()


def test_odd_odd_monomials_are_irreducible():
    for (i, j) in ((1, 1), (3, 1), (1, 3), (3, 3), (5, 1)):
        with pytest.raises(DecompositionError):
            reduce(mono_form(i, j), GLOBAL_CENTER)
    with pytest.raises(DecompositionError):
        reduce(mono_form(1, 1), GLOBAL_CENTER, method="ansatz")


def test_verify_decomposition_rejects_perturbed_u():
    d = reduce(mono_form(0, 3), GLOBAL_CENTER)
    assert verify_decomposition(mono_form(0, 3), d, GLOBAL_CENTER)
    bad = CanonicalDecomposition(d.u + PolyU.const(1, "H"), d.v, d.r, d.R)
    assert not verify_decomposition(mono_form(0, 3), bad, GLOBAL_CENTER)


def _decomposable_monomials(max_x=8, max_y=6):
    out = []
    for a in range(max_x + 1):
        for b in range(max_y + 1):
            if a % 2 == 1 and b % 2 == 1:
                continue  # no canonical decomposition exists for odd/odd
            out.append((a, b))
    return out


def test_reduction_soundness_random_corpus():
    rng = random.Random(20260810)
    pool = _decomposable_monomials()
    for case in SIGN_CASES:
        for a, b in rng.sample(pool, 24):
            om = mono_form(a, b, F(rng.randint(-9, 9) or 1, rng.randint(1, 9)))
            d = reduce(om, case)
            assert verify_decomposition(om, d, case), (case.name, a, b)


def test_uv_unique_across_engines_and_pivot_orders():
    corpus = [mono_form(0, 3), mono_form(4, 1), mono_form(2, 3), mono_form(1, 4)]
    for case in SIGN_CASES:
        for om in corpus:
            d0 = reduce(om, case, method="rewrite")
            d1 = reduce(om, case, method="ansatz", pivot_order="grlex")
            d2 = reduce(om, case, method="ansatz", pivot_order="reversed")
            assert d0.u == d1.u == d2.u
            assert d0.v == d1.v == d2.v
            for d in (d1, d2):
                assert verify_decomposition(om, d, case)


def test_reduce_is_linear_in_omega():
    a, b = F(3, 5), F(-7, 2)
    om1, om2 = mono_form(0, 3), mono_form(6, 1)
    for case in SIGN_CASES:
        d1, d2 = reduce(om1, case), reduce(om2, case)
        d = reduce(om1.scale(a) + om2.scale(b), case)
        assert d.u == d1.u.scale(a) + d2.u.scale(b)
        assert d.v == d1.v.scale(a) + d2.v.scale(b)


def test_eight_interior_and_exterior_share_reduction():
    om = mono_form(2, 5)
    di = reduce(om, EIGHT_INTERIOR)
    de = reduce(om, EIGHT_EXTERIOR)
    assert di.u == de.u and di.v == de.v
