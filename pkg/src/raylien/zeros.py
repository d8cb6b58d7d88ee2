"""Zero counting for elements p(h) I2(h) + q(h) I0(h), deg p, q <= 2.

Real intervals are scanned on a log-graded grid with bisection refinement;
near-tangencies are probed with the derivative element (exact via the
Picard-Fuchs relations on the eight-loop annuli, finite differences
elsewhere) and reported as multiplicity-2 candidates.  On the eight-loop
exterior the derivative combination J = ptilde J2 + qtilde J0 is also
counted in the cut plane by the argument principle: the winding of
F = ptilde J2/J0 + qtilde along the boundary of a truncated cut plane
(|h| <= R minus a slit neighborhood of half-width delta) equals the number
of zeros of F inside, since J0 never vanishes there.

The contour values of (J0, J2) come from a dense Picard-Fuchs continuation
along the contour itself, computed once per (R, delta) and shared by all
elements; the continuation returning to its seed after the full loop is a
built-in consistency check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.integrate import solve_ivp

from .elliptic import (
    H_REF,
    PeriodValue,
    _pf_J,
    _pf_rhs_factory,
    periods_real,
)
from .exactalg import PolyU
from .forms import CASES, AnnulusCase

__all__ = [
    "VElement",
    "ZeroReport",
    "ContourSpec",
    "eval_V",
    "count_zeros_real",
    "derivative_element",
    "winding_number_F",
]


@dataclass(frozen=True)
class VElement:
    """p(h) I2 + q(h) I0 (basis='I') or p(h) J2 + q(h) J0 (basis='J')."""

    p: PolyU
    q: PolyU
    case: AnnulusCase
    basis: str = "I"

    def __post_init__(self):
        if self.p.degree() > 2 or self.q.degree() > 2:
            raise ValueError("degrees must be <= 2")
        if self.basis not in ("I", "J"):
            raise ValueError("basis must be 'I' or 'J'")

    def is_zero(self) -> bool:
        return self.p.is_zero() and self.q.is_zero()

    @classmethod
    def from_coeffs(cls, p_coeffs, q_coeffs, case: AnnulusCase, basis: str = "I") -> VElement:
        return cls(
            PolyU.from_coeff_list(list(p_coeffs), "h"),
            PolyU.from_coeff_list(list(q_coeffs), "h"),
            case,
            basis,
        )


@dataclass(frozen=True)
class ZeroReport:
    count: int
    locations: tuple[tuple[float, int], ...]  # (h, multiplicity estimate)
    method: str  # real-scan | argument-principle
    bound: int
    certified: bool
    window: tuple[float, float]
    notes: str = ""


def eval_V(e: VElement, h: float, tol: float = 1e-12) -> float:
    """Value of the element at h (quadrature-backed)."""
    pv = periods_real(e.case, h, tol)
    if e.basis == "I":
        return float(e.p(h)) * pv.I2 + float(e.q(h)) * pv.I0
    return float(e.p(h)) * pv.J2 + float(e.q(h)) * pv.J0


def derivative_element(e: VElement) -> VElement:
    """(ptilde, qtilde) with I' = ptilde J2 + qtilde J0 (eight-loop cases).

    From the Picard-Fuchs system: I0 = (4h J0 + J2)/3 and
    I2 = (4h J0 + (12h+4) J2)/15, so substituting into
    I' = p' I2 + p J2 + q' I0 + q J0 gives exact degree-<=2 polynomials.
    """
    if e.case.name not in ("eight-interior", "eight-exterior"):
        raise ValueError("exact derivative elements need the eight-loop system")
    if e.basis != "I":
        raise ValueError("derivative_element expects an I-basis element")
    h = PolyU.variable("h")
    dp, dq = e.p.derivative(), e.q.derivative()
    twelveh4 = PolyU.from_coeff_list([4, 12], "h")
    fourh = PolyU.from_coeff_list([0, 4], "h")
    ptilde = e.p + (twelveh4 * dp).scale(Fraction(1, 15)) + dq.scale(Fraction(1, 3))
    qtilde = e.q + (fourh * dp).scale(Fraction(1, 15)) + (fourh * dq).scale(Fraction(1, 3))
    return VElement(ptilde, qtilde, e.case, basis="J")


# ---------------------------------------------------------------------------
# Real-interval scan
# ---------------------------------------------------------------------------

_UNBOUNDED_WINDOW = (1e-8, 1e8)


def scan_window(case: AnnulusCase) -> tuple[float, float]:
    if math.isinf(case.h_hi):
        return _UNBOUNDED_WINDOW
    return case.h_lo, case.h_hi


def scan_grid(case: AnnulusCase, n: int) -> np.ndarray:
    """Log-graded scan nodes strictly inside the case interval."""
    if math.isinf(case.h_hi):
        return np.geomspace(*_UNBOUNDED_WINDOW, n)
    lo, hi = case.h_lo, case.h_hi
    width = hi - lo
    m = n // 2
    d1 = np.geomspace(1e-9, 0.5, m) * width
    d2 = np.geomspace(1e-9, 0.5, n - m) * width
    return np.unique(np.concatenate([lo + d1, hi - d2]))


_GRID_CACHE: dict[tuple[str, int, float], tuple[np.ndarray, ...]] = {}


def _grid_periods(case: AnnulusCase, n: int, tol: float):
    key = (case.name, n, tol)
    if key not in _GRID_CACHE:
        hs = scan_grid(case, n)
        vals = np.empty((4, hs.size))
        for i, h in enumerate(hs):
            pv = periods_real(case, float(h), tol)
            vals[:, i] = (pv.I0, pv.I2, pv.J0, pv.J2)
        _GRID_CACHE[key] = (hs, vals[0], vals[1], vals[2], vals[3])
    return _GRID_CACHE[key]


def _element_values(e: VElement, hs: np.ndarray, b0: np.ndarray, b2: np.ndarray):
    p = np.polyval([float(e.p[k]) for k in (2, 1, 0)], hs)
    q = np.polyval([float(e.q[k]) for k in (2, 1, 0)], hs)
    return p * b2 + q * b0, np.abs(p) * np.abs(b2) + np.abs(q) * np.abs(b0)


def _bisect_zero(e: VElement, a: float, b: float, fa: float, tol: float) -> float:
    """Refine a bracketed sign change to relative width 1e-10."""
    target = 1e-10
    while (b - a) > target * max(1.0, abs(a), abs(b)):
        m = 0.5 * (a + b)
        fm = eval_V(VElement(e.p, e.q, e.case, e.basis), m, tol)
        if fm == 0.0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def count_zeros_real(
    e: VElement,
    grid: int = 200,
    tol: float = 1e-12,
    refine_tol: float = 1e-9,
) -> ZeroReport:
    """Sign-change scan with bisection refinement and tangency probing.

    The count covers the scan window (equal to the case interval, truncated
    to [1e-8, 1e8] on unbounded annuli); zeros outside it are not seen.
    """
    if e.is_zero():
        raise ValueError("identically-zero element")
    if grid < 200:
        raise ValueError("grid must be >= 200")
    case = e.case
    hs, I0, I2, J0, J2 = _grid_periods(case, grid, tol)
    base0, base2 = (I0, I2) if e.basis == "I" else (J0, J2)
    vals, mags = _element_values(e, hs, base0, base2)
    # below this the computed value is float/quadrature cancellation noise
    # and its sign carries no information; tangency candidacy sits higher
    floor = 1e-13 * mags + 1e-306
    noise = tol * mags + 1e-306

    locations: list[tuple[float, int]] = []
    certified = True
    notes = []

    sign = np.sign(vals)
    reliable = [i for i in range(len(hs)) if abs(vals[i]) > floor[i]]
    if not reliable:
        return ZeroReport(
            count=0,
            locations=(),
            method="real-scan",
            bound=case.zero_bound,
            certified=False,
            window=scan_window(case),
            notes="all scan values below the noise floor",
        )
    if reliable[0] > 0:
        notes.append(f"sub-noise values below h={hs[reliable[0]]:.3g} (unresolvable)")
    if reliable[-1] < len(hs) - 1:
        notes.append(f"sub-noise values above h={hs[reliable[-1]]:.3g} (unresolvable)")

    for i, j in zip(reliable, reliable[1:]):
        if sign[i] != sign[j]:
            z = _bisect_zero(e, float(hs[i]), float(hs[j]), float(vals[i]), refine_tol)
            locations.append((z, 1))
        elif j > i + 1:
            # a sub-noise run with equal reliable signs on both flanks:
            # either an even tangency or an unresolvable dip
            h_mid = float(hs[(i + j) // 2])
            mult = _probe_tangency(e, float(hs[i]), float(hs[j]), tol)
            if mult == 2:
                locations.append((h_mid, 2))
                notes.append(f"multiplicity-2 candidate at h={h_mid:.6g}")
            else:
                certified = False
                notes.append(f"unresolved near-tangency at h={h_mid:.6g}")

    # near-tangency candidates among reliable nodes: |value| dips under the
    # quadrature noise with no sign change around it
    rel_set = set(reliable)
    dips = [
        i
        for i in range(1, len(hs) - 1)
        if i in rel_set
        and (i - 1) in rel_set
        and (i + 1) in rel_set
        and abs(vals[i]) < 10.0 * noise[i]
        and abs(vals[i]) <= abs(vals[i - 1])
        and abs(vals[i]) <= abs(vals[i + 1])
        and sign[i - 1] == sign[i] == sign[i + 1]
    ]
    for i in dips:
        mult = _probe_tangency(e, float(hs[i - 1]), float(hs[i + 1]), tol)
        if mult == 2:
            locations.append((float(hs[i]), 2))
            notes.append(f"multiplicity-2 candidate at h={hs[i]:.6g}")
        elif mult < 0:
            certified = False
            notes.append(f"unresolved near-tangency at h={hs[i]:.6g}")

    locations.sort()
    count = sum(m for _, m in locations)
    bound = case.zero_bound
    certified = certified and count <= bound
    return ZeroReport(
        count=count,
        locations=tuple(locations),
        method="real-scan",
        bound=bound,
        certified=certified,
        window=scan_window(case),
        notes="; ".join(notes),
    )


def _probe_tangency(e: VElement, a: float, b: float, tol: float) -> int:
    """2 for a clean derivative sign change (even tangency), -1 if murky."""
    if e.case.name in ("eight-interior", "eight-exterior") and e.basis == "I":
        de = derivative_element(e)
        da = eval_V(de, a, tol)
        db = eval_V(de, b, tol)
    else:
        step = 1e-6 * (b - a)
        da = (eval_V(e, a + step, tol) - eval_V(e, a - step, tol)) / (2 * step)
        db = (eval_V(e, b + step, tol) - eval_V(e, b - step, tol)) / (2 * step)
    if da == 0.0 or db == 0.0:
        return -1
    if (da > 0) != (db > 0):
        return 2
    return -1


# ---------------------------------------------------------------------------
# Argument principle on the truncated cut plane (eight-loop exterior)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContourSpec:
    """Boundary of { |h| <= R } minus a slit neighborhood of half-width delta."""

    R: float = 1e3
    delta: float = 1e-3
    samples_circle: int = 700
    samples_edge: int = 500
    samples_near: int = 80
    max_refine_depth: int = 24


class _ContourTable:
    """Dense (J0, J2) along the contour, shared across elements."""

    def __init__(self, spec: ContourSpec, rtol: float = 1e-12):
        self.spec = spec
        R, d = spec.R, spec.delta
        Rt = math.sqrt(R * R - d * d)
        phi_d = math.asin(d / R)
        lo = math.log(d)
        hi = math.log(Rt)

        def circle_up(t):
            h = R * cmath.exp(1j * t)
            return h, 1j * h

        def edge_up_log(t):  # t in [hi, lo] descending: h = -e^t + i d
            return complex(-math.exp(t), d), complex(-math.exp(t), 0.0)

        def edge_up_lin(t):  # t in [-d, 0]
            return complex(t, d), complex(1.0, 0.0)

        def semicircle(t):  # t from pi/2 to -pi/2
            h = d * cmath.exp(1j * t)
            return h, 1j * h

        def edge_dn_lin(t):  # t in [0, -d]
            return complex(t, -d), complex(1.0, 0.0)

        def edge_dn_log(t):  # t in [lo, hi]: h = -e^t - i d
            return complex(-math.exp(t), -d), complex(-math.exp(t), 0.0)

        def circle_dn(t):
            h = R * cmath.exp(1j * t)
            return h, 1j * h

        self.pieces = [
            (circle_up, 0.0, math.pi - phi_d, spec.samples_circle),
            (edge_up_log, hi, lo, spec.samples_edge),
            (edge_up_lin, -d, 0.0, spec.samples_near),
            (semicircle, 0.5 * math.pi, -0.5 * math.pi, spec.samples_near),
            (edge_dn_lin, 0.0, -d, spec.samples_near),
            (edge_dn_log, lo, hi, spec.samples_edge),
            (circle_dn, -(math.pi - phi_d), 0.0, spec.samples_circle),
        ]

        seed = periods_real(CASES["eight-exterior"], R, 1e-13)
        I0, I2 = complex(seed.I0), complex(seed.I2)
        self._seed = (I0, I2)
        self.sols = []
        for path, t0, t1, _ in self.pieces:
            (I0, I2), sol = _solve_dense(path, t0, t1, I0, I2, rtol)
            self.sols.append(sol)
        self.closure_error = abs(I0 - self._seed[0]) / abs(self._seed[0]) + abs(
            I2 - self._seed[1]
        ) / abs(self._seed[1])
        if self.closure_error > 1e-7:
            raise RuntimeError(
                f"contour continuation failed to close: error {self.closure_error:.2e}"
            )

        self.ts: list[np.ndarray] = []
        for (path, t0, t1, n), sol in zip(self.pieces, self.sols):
            self.ts.append(np.linspace(t0, t1, n))

    def jj_at(self, piece: int, t: float) -> tuple[complex, complex, complex]:
        """(h, J0, J2) at parameter t of a piece (dense-output backed)."""
        path, *_ = self.pieces[piece]
        h, _ = path(t)
        y = self.sols[piece].sol(t)
        I0 = y[0] + 1j * y[1]
        I2 = y[2] + 1j * y[3]
        J0, J2 = _pf_J(h, I0, I2)
        return h, J0, J2


def _solve_dense(path, t0, t1, I0, I2, rtol):
    sol = solve_ivp(
        _pf_rhs_factory(path),
        (t0, t1),
        [I0.real, I0.imag, I2.real, I2.imag],
        method="DOP853",
        rtol=rtol,
        atol=1e-14,
        dense_output=True,
    )
    if not sol.success:
        raise RuntimeError(f"contour continuation failed: {sol.message}")
    y = sol.y[:, -1]
    return (y[0] + 1j * y[1], y[2] + 1j * y[3]), sol


_TABLE_CACHE: dict[tuple[float, float, int, int, int], _ContourTable] = {}


def _contour_table(spec: ContourSpec) -> _ContourTable:
    key = (spec.R, spec.delta, spec.samples_circle, spec.samples_edge, spec.samples_near)
    if key not in _TABLE_CACHE:
        _TABLE_CACHE[key] = _ContourTable(spec)
    return _TABLE_CACHE[key]


def winding_number_F(
    e_tilde: VElement,
    contour: ContourSpec | None = None,
    tol: float = 1e-12,
    zero_clearance: float = 1e-9,
) -> tuple[float, int]:
    """Winding of F = ptilde J2/J0 + qtilde along the truncated-domain boundary.

    Returns (winding, round(winding)); by the argument principle the latter
    counts zeros of F inside the truncated cut plane (zeros within delta of
    the slit or beyond radius R are outside the count).  Raises when F
    comes within ``zero_clearance`` (relatively) of 0 on the contour, or
    when the adaptive refinement budget is exhausted.
    """
    if e_tilde.case.name != "eight-exterior":
        raise ValueError("the argument-principle contour lives in the exterior domain")
    if e_tilde.is_zero():
        raise ValueError("identically-zero element")
    spec = contour or ContourSpec()
    table = _contour_table(spec)

    pc = [float(e_tilde.p[k]) for k in (2, 1, 0)]
    qc = [float(e_tilde.q[k]) for k in (2, 1, 0)]

    def F_at(piece: int, t: float) -> complex:
        h, J0, J2 = table.jj_at(piece, t)
        ratio = J2 / J0
        val = np.polyval(pc, h) * ratio + np.polyval(qc, h)
        scale = abs(np.polyval(pc, h)) * abs(ratio) + abs(np.polyval(qc, h))
        if abs(val) < zero_clearance * max(scale, 1e-300):
            raise RuntimeError(f"contour hits a zero of F near h={h:.6g}")
        return val

    total = 0.0
    for piece, ts in enumerate(table.ts):
        fvals = [F_at(piece, float(t)) for t in ts]
        for k in range(len(ts) - 1):
            total += _phase_step(
                table, piece, float(ts[k]), float(ts[k + 1]), fvals[k], fvals[k + 1],
                F_at, spec.max_refine_depth,
            )
    winding = total / (2.0 * math.pi)
    return winding, int(round(winding))


def _phase_step(table, piece, t0, t1, f0, f1, F_at, depth) -> float:
    step = cmath.phase(f1 / f0)
    if abs(step) < 0.25 * math.pi:
        return step
    if depth <= 0:
        raise RuntimeError("argument refinement budget exceeded")
    tm = 0.5 * (t0 + t1)
    fm = F_at(piece, tm)
    return _phase_step(table, piece, t0, tm, f0, fm, F_at, depth - 1) + _phase_step(
        table, piece, tm, t1, fm, f1, F_at, depth - 1
    )
