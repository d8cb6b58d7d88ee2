"""Polynomial one-forms and their canonical relative decomposition.

For the quartic Hamiltonian H = y^2/2 + (a/2) x^2 + (b/4) x^4 every one-form
arising in the perturbation calculus splits, exactly, as

    omega = (u(H) x^2 + v(H)) y dx  +  r dH  +  dR

with u, v univariate polynomials in H and r, R bivariate polynomials.  The
pair (u, v) is unique; r and R are representatives only (r can be shifted by
any polynomial in H at the expense of R).  Two independent reduction engines
are provided:

* ``method='rewrite'`` (default): an exact rewriting scheme built from
  integration by parts and the energy relation y^2 = 2H - a x^2 - (b/2) x^4.
  Linear in the number of terms, fast enough for deep recursions.
* ``method='ansatz'``: undetermined coefficients for (u, v, r, R) up to
  degree bounds, solved with the deterministic exact linear solver.  Slower;
  kept as a structurally independent cross-check and for pivot-order
  experiments.

Both engines verify their output identity exactly before returning.

Monomials x^a y^b dx with a and b both odd admit no such decomposition (on
the asymmetric oval of the eight-loop interior they integrate to a nonzero
algebraic function of h, which no pair (u, v) can reproduce).  Such inputs
raise :class:`DecompositionError`; they never occur in the perturbation
recursion, whose forms always have a+b odd.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactalg import (
    PolyU,
    PolyXY,
    RationalLike,
    compose_in_h,
    hamiltonian_xy,
    rat,
    solve_linear_exact,
)


class DecompositionError(ValueError):
    """No canonical decomposition under the given degree bounds."""


@dataclass(frozen=True)
class AnnulusCase:
    """One period annulus of the unperturbed system.

    (a, b) fixes the Hamiltonian sign case; the open h-interval and the
    zero-count ceiling are carried for the numerical modules only (the
    symbolic reduction depends on (a, b) alone).
    """

    name: str
    a: Fraction
    b: Fraction
    h_lo: float
    h_hi: float
    zero_bound: int

    def hamiltonian(self) -> PolyXY:
        return hamiltonian_xy(self.a, self.b)

    def contains_h(self, h: float) -> bool:
        return self.h_lo < h < self.h_hi

    def __repr__(self) -> str:
        return f"AnnulusCase({self.name})"


GLOBAL_CENTER = AnnulusCase("global-center", Fraction(1), Fraction(1), 0.0, math.inf, 5)
TRUNCATED_PENDULUM = AnnulusCase("truncated-pendulum", Fraction(1), Fraction(-1), 0.0, 0.25, 5)
EIGHT_INTERIOR = AnnulusCase("eight-interior", Fraction(-1), Fraction(1), -0.25, 0.0, 5)
EIGHT_EXTERIOR = AnnulusCase("eight-exterior", Fraction(-1), Fraction(1), 0.0, math.inf, 6)

CASES: dict[str, AnnulusCase] = {
    c.name: c
    for c in (GLOBAL_CENTER, TRUNCATED_PENDULUM, EIGHT_INTERIOR, EIGHT_EXTERIOR)
}

# The three distinct (a, b) sign cases (both eight-loop annuli share one).
SIGN_CASES = (GLOBAL_CENTER, TRUNCATED_PENDULUM, EIGHT_INTERIOR)


def get_case(name: str) -> AnnulusCase:
    try:
        return CASES[name]
    except KeyError:
        raise KeyError(f"unknown case {name!r}; choose from {sorted(CASES)}") from None


class OneForm:
    """P(x,y) dx + Q(x,y) dy with exact polynomial coefficients."""

    __slots__ = ("P", "Q")

    def __init__(self, P: PolyXY | None = None, Q: PolyXY | None = None):
        object.__setattr__(self, "P", P if P is not None else PolyXY.zero())
        object.__setattr__(self, "Q", Q if Q is not None else PolyXY.zero())

    def __setattr__(self, *args):
        raise AttributeError("OneForm is immutable")

    @classmethod
    def zero(cls) -> OneForm:
        return cls()

    def is_zero(self) -> bool:
        return self.P.is_zero() and self.Q.is_zero()

    def degree(self) -> int:
        return max(self.P.total_degree(), self.Q.total_degree())

    def __add__(self, other: OneForm) -> OneForm:
        return OneForm(self.P + other.P, self.Q + other.Q)

    def __sub__(self, other: OneForm) -> OneForm:
        return OneForm(self.P - other.P, self.Q - other.Q)

    def __neg__(self) -> OneForm:
        return OneForm(-self.P, -self.Q)

    def scale(self, c: RationalLike) -> OneForm:
        return OneForm(self.P.scale(c), self.Q.scale(c))

    def mul_poly(self, g: PolyXY) -> OneForm:
        """g * omega for a polynomial factor g."""
        return OneForm(g * self.P, g * self.Q)

    def is_closed(self) -> bool:
        """dP/dy == dQ/dx; on the plane closed == exact."""
        return self.P.diff_y() == self.Q.diff_x()

    def __eq__(self, other) -> bool:
        return isinstance(other, OneForm) and self.P == other.P and self.Q == other.Q

    def __repr__(self) -> str:
        return f"({self.P}) dx + ({self.Q}) dy"


def exterior_derivative(f: PolyXY) -> OneForm:
    """df = f_x dx + f_y dy."""
    return OneForm(f.diff_x(), f.diff_y())


@dataclass(frozen=True)
class CanonicalDecomposition:
    """The quadruple (u, v, r, R) of a reduced one-form."""

    u: PolyU  # coefficient of x^2 y dx, polynomial in H
    v: PolyU  # coefficient of y dx, polynomial in H
    r: PolyXY
    R: PolyXY

    def uv_is_zero(self) -> bool:
        return self.u.is_zero() and self.v.is_zero()


def perturbation_form(lambdas: list[RationalLike], case: AnnulusCase | None = None) -> OneForm:
    """(l1 + l2 x^2 + l3 y^2 + l4 x^4 + l5 y^4 + l6 x^6) y dx.

    Independent of the case; the parameter is accepted for interface
    symmetry with the reduction routines.
    """
    if len(lambdas) != 6:
        raise ValueError("expected 6 coefficients")
    l1, l2, l3, l4, l5, l6 = (rat(c) for c in lambdas)
    P = PolyXY(
        {
            (0, 1): l1,
            (2, 1): l2,
            (0, 3): l3,
            (4, 1): l4,
            (0, 5): l5,
            (6, 1): l6,
        }
    )
    return OneForm(P, PolyXY.zero())


def verify_decomposition(omega: OneForm, d: CanonicalDecomposition, case: AnnulusCase) -> bool:
    """Exact check of omega == (u(H) x^2 + v(H)) y dx + r dH + dR."""
    H = case.hamiltonian()
    main = compose_in_h(d.u, H) * PolyXY.monomial(2, 1) + compose_in_h(d.v, H) * PolyXY.monomial(0, 1)
    dH = exterior_derivative(H)
    rebuilt = OneForm(main, PolyXY.zero()) + dH.mul_poly(d.r) + exterior_derivative(d.R)
    return (omega - rebuilt).is_zero()


# ---------------------------------------------------------------------------
# Rewrite engine
#
# Intermediate terms are tracked as c * H^e x^a y^b (H a formal symbol that
# is substituted at the end), split across three accumulators: pending dx
# terms, dH coefficients, and exact parts.  Rules, all exact identities:
#
#   even y-power   H^e x^a y^b dx  (b even >= 2): integrate x^a y^b dx by
#                  parts and replace y^(b-1) dy by y^(b-2) (dH - H_x dx);
#   odd  y-power   y^b -> y^(b-2) (2H - a x^2 - (b/2) x^4)   (b odd >= 3);
#   x-power drop   for x^a y dx (a >= 3), eliminate via d(H^e x^(a-3) y^3)
#                  and the odd rule, which leaves x^(a-2), x^(a-4) terms.
#
# Terminal dx terms are H^e y dx -> v and H^e x^2 y dx -> u; any surviving
# H^e x y dx term certifies that no decomposition exists.
# ---------------------------------------------------------------------------

Key = tuple[int, int, int]  # (e, a, b) for H^e x^a y^b


def _bump(d: dict[Key, Fraction], key: Key, c: Fraction):
    if c == 0:
        return
    cur = d.get(key)
    if cur is None:
        d[key] = c
    else:
        cur += c
        if cur == 0:
            del d[key]
        else:
            d[key] = cur


def _substitute_h(terms: dict[Key, Fraction], H: PolyXY) -> PolyXY:
    out = PolyXY.zero()
    powers: dict[int, PolyXY] = {0: PolyXY.const(1)}

    def h_pow(e: int) -> PolyXY:
        if e not in powers:
            powers[e] = h_pow(e - 1) * H
        return powers[e]

    for (e, a, b), c in terms.items():
        out = out + (h_pow(e) * PolyXY.monomial(a, b)).scale(c)
    return out


def _reduce_rewrite(omega: OneForm, case: AnnulusCase) -> CanonicalDecomposition:
    alpha, beta = case.a, case.b
    H = case.hamiltonian()

    r_acc: dict[Key, Fraction] = {}
    R_acc: dict[Key, Fraction] = {}

    # Q dy = d(int_y Q) - (d/dx int_y Q) dx
    Ry = omega.Q.integrate_y()
    for (i, j), c in Ry.coeffs.items():
        _bump(R_acc, (0, i, j), c)
    P = omega.P - Ry.diff_x()

    pending: dict[Key, Fraction] = {}
    for (i, j), c in P.coeffs.items():
        _bump(pending, (0, i, j), c)

    u: dict[int, Fraction] = {}
    v: dict[int, Fraction] = {}
    residue: dict[Key, Fraction] = {}

    while pending:
        key = max(pending, key=lambda k: (k[2], k[1], k[0]))
        c = pending.pop(key)
        e, a, b = key
        if b == 0:
            # H^e x^a dx = d(H^e x^(a+1)/(a+1)) - (e/(a+1)) H^(e-1) x^(a+1) dH
            _bump(R_acc, (e, a + 1, 0), c / (a + 1))
            if e:
                _bump(r_acc, (e - 1, a + 1, 0), -c * e / (a + 1))
        elif b % 2 == 0:
            # integrate by parts, then y^(b-1) dy = y^(b-2)(dH - H_x dx)
            _bump(R_acc, (e, a + 1, b), c / (a + 1))
            if e:
                _bump(r_acc, (e - 1, a + 1, b), -c * e / (a + 1))
            _bump(r_acc, (e, a + 1, b - 2), -c * b / (a + 1))
            _bump(pending, (e, a + 2, b - 2), c * b * alpha / (a + 1))
            _bump(pending, (e, a + 4, b - 2), c * b * beta / (a + 1))
        elif b >= 3:
            # y^b = y^(b-2) (2H - alpha x^2 - (beta/2) x^4)
            _bump(pending, (e + 1, a, b - 2), 2 * c)
            _bump(pending, (e, a + 2, b - 2), -c * alpha)
            _bump(pending, (e, a + 4, b - 2), -c * beta / 2)
        elif a >= 3:
            # x^a y dx via d(H^e x^(a-3) y^3); see module comment
            f = 2 * c / (beta * (a + 3))
            _bump(R_acc, (e, a - 3, 3), -f)
            if e:
                _bump(r_acc, (e - 1, a - 3, 3), f * e)
            _bump(r_acc, (e, a - 3, 1), 3 * f)
            if a > 3:
                _bump(pending, (e + 1, a - 4, 1), 2 * f * (a - 3))
            _bump(pending, (e, a - 2, 1), -f * alpha * a)
        elif a == 2:
            u[e] = u.get(e, Fraction(0)) + c
        elif a == 0:
            v[e] = v.get(e, Fraction(0)) + c
        else:  # a == 1, b == 1: no decomposition exists
            _bump(residue, key, c)

    if residue:
        terms = ", ".join(f"{c} * H^{e} x y dx" for (e, _, _), c in sorted(residue.items()))
        raise DecompositionError(
            f"no canonical decomposition: irreducible odd/odd residue [{terms}]"
        )

    return CanonicalDecomposition(
        u=PolyU(u, "H"),
        v=PolyU(v, "H"),
        r=_substitute_h(r_acc, H),
        R=_substitute_h(R_acc, H),
    )


# ---------------------------------------------------------------------------
# Ansatz engine (undetermined coefficients + exact linear solve)
# ---------------------------------------------------------------------------


def _grlex_pairs(max_total: int):
    for t in range(max_total + 1):
        for i in range(t, -1, -1):
            yield (i, t - i)


def _reduce_ansatz(
    omega: OneForm,
    case: AnnulusCase,
    deg_uv: int,
    deg_r: int,
    deg_R: int,
    pivot_order: str,
) -> CanonicalDecomposition | None:
    H = case.hamiltonian()
    dH = exterior_derivative(H)

    # unknown layout: u_0..u_du, v_0..v_dv, r_(i,j), R_(i,j) (grlex, no R const)
    unknowns: list[tuple[str, tuple]] = []
    unknowns += [("u", (k,)) for k in range(deg_uv + 1)]
    unknowns += [("v", (k,)) for k in range(deg_uv + 1)]
    r_keys = list(_grlex_pairs(deg_r))
    R_keys = [k for k in _grlex_pairs(deg_R) if k != (0, 0)]
    unknowns += [("r", k) for k in r_keys]
    unknowns += [("R", k) for k in R_keys]
    index = {uk: i for i, uk in enumerate(unknowns)}
    n = len(unknowns)

    # rows keyed by (which-coefficient, monomial)
    rows: dict[tuple[str, tuple[int, int]], dict[int, Fraction]] = {}

    def add(comp: str, mono: tuple[int, int], col: int, coeff: Fraction):
        if coeff == 0:
            return
        row = rows.setdefault((comp, mono), {})
        row[col] = row.get(col, Fraction(0)) + coeff

    Hpow = [PolyXY.const(1)]
    for _ in range(deg_uv):
        Hpow.append(Hpow[-1] * H)

    for k in range(deg_uv + 1):
        for (i, j), c in (Hpow[k] * PolyXY.monomial(2, 1)).coeffs.items():
            add("P", (i, j), index[("u", (k,))], c)
        for (i, j), c in (Hpow[k] * PolyXY.monomial(0, 1)).coeffs.items():
            add("P", (i, j), index[("v", (k,))], c)
    for (ri, rj) in r_keys:
        col = index[("r", (ri, rj))]
        for (i, j), c in dH.P.coeffs.items():
            add("P", (ri + i, rj + j), col, c)
        for (i, j), c in dH.Q.coeffs.items():
            add("Q", (ri + i, rj + j), col, c)
    for (Ri, Rj) in R_keys:
        col = index[("R", (Ri, Rj))]
        if Ri:
            add("P", (Ri - 1, Rj), col, Fraction(Ri))
        if Rj:
            add("Q", (Ri, Rj - 1), col, Fraction(Rj))

    targets: dict[tuple[str, tuple[int, int]], Fraction] = {}
    for (i, j), c in omega.P.coeffs.items():
        targets[("P", (i, j))] = c
    for (i, j), c in omega.Q.coeffs.items():
        targets[("Q", (i, j))] = c

    all_rows = sorted(set(rows) | set(targets))
    A = []
    bvec = []
    for key in all_rows:
        row = rows.get(key, {})
        A.append([row.get(col, Fraction(0)) for col in range(n)])
        bvec.append(targets.get(key, Fraction(0)))

    col_order = list(range(n))
    if pivot_order == "reversed":
        col_order = col_order[::-1]
    sol = solve_linear_exact(A, bvec, column_order=col_order)
    if sol is None:
        return None

    u = PolyU({k: sol[index[("u", (k,))]] for k in range(deg_uv + 1)}, "H")
    v = PolyU({k: sol[index[("v", (k,))]] for k in range(deg_uv + 1)}, "H")
    r = PolyXY({k: sol[index[("r", k)]] for k in r_keys})
    R = PolyXY({k: sol[index[("R", k)]] for k in R_keys})
    return CanonicalDecomposition(u, v, r, R)


def reduce(
    omega: OneForm,
    case: AnnulusCase,
    degree_hint: int | None = None,
    method: str = "rewrite",
    pivot_order: str = "grlex",
) -> CanonicalDecomposition:
    """Canonical decomposition of a polynomial one-form.

    The (u, v) part of the result is unique; (r, R) depend on the engine
    (and, for the ansatz engine, on the pivot order).  The output identity
    is verified exactly before returning.

    Raises :class:`DecompositionError` when no decomposition exists (only
    possible for inputs with an odd/odd monomial sector) or, for the ansatz
    engine, when the degree bounds are exhausted.
    """
    if method == "rewrite":
        dec = _reduce_rewrite(omega, case)
    elif method == "ansatz":
        deg = max(omega.degree(), 1) if degree_hint is None else degree_hint
        dec = None
        for attempt in range(2):
            deg_uv = deg // 4 + 1 + 2 * attempt
            deg_r = deg + 2 + 4 * attempt
            deg_R = deg + 2 + 4 * attempt
            dec = _reduce_ansatz(omega, case, deg_uv, deg_r, deg_R, pivot_order)
            if dec is not None:
                break
        if dec is None:
            raise DecompositionError(
                f"degree bound exhausted for ansatz reduction at degree {deg}"
            )
    else:
        raise ValueError(f"unknown method {method!r}")

    if not verify_decomposition(omega, dec, case):
        raise AssertionError("internal error: decomposition failed exact verification")
    return dec
