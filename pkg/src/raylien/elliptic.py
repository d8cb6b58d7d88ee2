"""Numerical periods of the quartic level ovals and their continuations.

Real-oval values I0 = loop integral of y dx, I2 of x^2 y dx and the
derivative periods J0, J2 (integrands dx/y, x^2 dx/y) are computed with
tanh-sinh quadrature over the oval's x-segment; the substitution weights
absorb the square-root endpoint singularities, and the factored form of
y^2 is evaluated through the stable node offsets 1 -+ u to avoid endpoint
cancellation.  Orientation is fixed so that I0 > 0.

For the eight loop the module also provides

* the Picard-Fuchs residuals of  3 I0 = 4h J0 + J2  and
  15 I2 = 4h J0 + (12h+4) J2  (both identities follow from exact one-form
  relations on the level curve, so they hold for every cycle family);
* analytic continuation of (I0, I2, J0, J2) over the cut plane, by two
  independent routes: direct contour integration around the tracked pair
  of branch points (a Joukowski ellipse; raises when another branch point
  obstructs the contour), and integration of the Picard-Fuchs system as a
  linear ODE along slit-avoiding paths;
* Wronskians of the upper/lower boundary values along the cut, Richardson
  extrapolated in the offset, and the vanishing-cycle periods entering the
  jump formula across the cut.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .forms import CASES, EIGHT_EXTERIOR, EIGHT_INTERIOR, AnnulusCase

__all__ = [
    "PeriodValue",
    "OvalGeometry",
    "QuadratureError",
    "ContourObstructionError",
    "oval_geometry",
    "periods_real",
    "pf_residual",
    "periods_complex",
    "pf_continue",
    "wronskians",
    "vanishing_cycle_periods",
    "case_grid",
]


class QuadratureError(RuntimeError):
    """Quadrature failed to converge to the requested tolerance."""


class ContourObstructionError(RuntimeError):
    """A branch point obstructs the integration contour (no deformation)."""


@dataclass(frozen=True)
class PeriodValue:
    I0: complex
    I2: complex
    J0: complex
    J2: complex
    h: complex
    case: str
    branch_tag: str  # real-oval | plus-side | minus-side | vanishing-cycle
    est_error: float


@dataclass(frozen=True)
class OvalGeometry:
    """x-extent of one real oval: y^2 > 0 strictly inside [x_lo, x_hi]."""

    x_roots: tuple[float, ...]
    x_lo: float
    x_hi: float


def oval_geometry(case: AnnulusCase, h: float) -> OvalGeometry:
    """Integration segment of the case's oval at level h."""
    if not case.contains_h(h):
        raise ValueError(f"h={h} outside the {case.name} interval")
    if case.name == "global-center":
        # -1 + sqrt(1+4h), written to avoid cancellation at small h
        xp = math.sqrt(4.0 * h / (1.0 + math.sqrt(1.0 + 4.0 * h)))
        return OvalGeometry((-xp, xp), -xp, xp)
    if case.name == "truncated-pendulum":
        # 1 - sqrt(1-4h) without cancellation
        xm = math.sqrt(4.0 * h / (1.0 + math.sqrt(1.0 - 4.0 * h)))
        return OvalGeometry((-xm, xm), -xm, xm)
    if case.name == "eight-interior":
        s = math.sqrt(1.0 + 4.0 * h)
        x1 = math.sqrt(-4.0 * h / (1.0 + s))  # 1 - s, stable for h near 0
        x2 = math.sqrt(1.0 + s)
        return OvalGeometry((x1, x2), x1, x2)  # right oval
    if case.name == "eight-exterior":
        xp = math.sqrt(1.0 + math.sqrt(1.0 + 4.0 * h))
        return OvalGeometry((-xp, xp), -xp, xp)
    raise KeyError(case.name)


# ---------------------------------------------------------------------------
# tanh-sinh quadrature on (-1, 1)
# ---------------------------------------------------------------------------

_T_MAX = 4.3
_LEVEL_CACHE: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]] = {}


def _ts_level(k: int):
    """Nodes/weights at step 2^-k: (x, w, 1-x, 1+x), endpoint-stable."""
    if k in _LEVEL_CACHE:
        return _LEVEL_CACHE[k]
    step = 2.0 ** (-k)
    n = int(math.ceil(_T_MAX / step))
    t = step * np.arange(1, n + 1)
    g = 0.5 * np.pi * np.sinh(t)
    x = np.tanh(g)
    e = np.exp(-2.0 * g)
    om = 2.0 * e / (1.0 + e)  # 1 - x without cancellation
    w = 0.5 * np.pi * np.cosh(t) / np.cosh(g) ** 2 * step

    x_full = np.concatenate([-x[::-1], [0.0], x])
    w_full = np.concatenate([w[::-1], [0.5 * np.pi * step], w])
    one_minus = np.concatenate([2.0 - om[::-1], [1.0], om])
    one_plus = one_minus[::-1].copy()
    _LEVEL_CACHE[k] = (x_full, w_full, one_minus, one_plus)
    return _LEVEL_CACHE[k]


def _y_on_nodes(
    case: AnnulusCase, h: float, geo: OvalGeometry, xx: np.ndarray,
    b_minus_x: np.ndarray, x_minus_a: np.ndarray,
) -> np.ndarray:
    """y(x) on quadrature nodes, via the factored y^2 (endpoint-stable).

    The x-symmetric ovals are integrated over [0, x_hi]; their only root on
    that segment is x_hi, handled through b_minus_x.  The eight-interior
    right oval has roots at both segment ends.
    """
    name = case.name
    B = geo.x_hi
    if name == "global-center":
        c = 1.0 + math.sqrt(1.0 + 4.0 * h)
        y2 = 0.5 * b_minus_x * (B + xx) * (xx * xx + c)
    elif name == "truncated-pendulum":
        c = 1.0 + math.sqrt(1.0 - 4.0 * h)
        y2 = 0.5 * b_minus_x * (B + xx) * (c - xx * xx)
    elif name == "eight-exterior":
        c = 4.0 * h / (math.sqrt(1.0 + 4.0 * h) + 1.0)  # sqrt(1+4h) - 1
        y2 = 0.5 * b_minus_x * (B + xx) * (xx * xx + c)
    elif name == "eight-interior":
        A = geo.x_lo
        y2 = 0.5 * x_minus_a * (xx + A) * b_minus_x * (geo.x_hi + xx)
    else:
        raise KeyError(name)
    return np.sqrt(np.maximum(y2, 0.0))


def periods_real(
    case: AnnulusCase,
    h: float,
    tol: float = 1e-12,
    min_level: int = 5,
    max_level: int = 12,
) -> PeriodValue:
    """All four period values on the real oval at level h.

    Levels double until the largest relative change drops below tol; the
    last change is reported as est_error.  Symmetric ovals are folded onto
    [0, x_hi] so that the near-saddle peak of 1/y at x = 0 sits at a
    segment endpoint, inside the double-exponential node cluster.
    """
    if tol < 1e-14:
        raise ValueError("tol must be >= 1e-14")
    geo = oval_geometry(case, h)
    if case.name == "eight-interior":
        A, B, fold = geo.x_lo, geo.x_hi, 1.0
    else:
        A, B, fold = 0.0, geo.x_hi, 2.0
    half = 0.5 * (B - A)
    mid = 0.5 * (B + A)
    prev = None
    for k in range(min_level, max_level + 1):
        x, w, om, op = _ts_level(k)
        xx = mid + half * x
        bmx = half * om
        xma = half * op
        y = _y_on_nodes(case, h, geo, xx, bmx, xma)
        x2 = xx * xx
        wy = w * y
        wovery = w / y
        scale_out = 2.0 * half * fold
        vals = scale_out * np.array(
            [wy.sum(), (x2 * wy).sum(), wovery.sum(), (x2 * wovery).sum()]
        )
        if prev is not None:
            scale = np.maximum(np.abs(vals), 1e-300)
            err = float(np.max(np.abs(vals - prev) / scale))
            if err < tol:
                return PeriodValue(
                    I0=float(vals[0]),
                    I2=float(vals[1]),
                    J0=float(vals[2]),
                    J2=float(vals[3]),
                    h=h,
                    case=case.name,
                    branch_tag="real-oval",
                    est_error=err,
                )
        prev = vals
    raise QuadratureError(
        f"tanh-sinh failed to reach tol={tol} for {case.name} at h={h} "
        f"(last values {prev})"
    )


def pf_residual(case: AnnulusCase, h: float, tol: float = 1e-12) -> tuple[float, float]:
    """Scaled residuals of the two Picard-Fuchs identities (eight loop)."""
    if case.name not in ("eight-interior", "eight-exterior"):
        raise ValueError("the tabulated system applies to the eight-loop annuli")
    pv = periods_real(case, h, tol)
    scale = max(abs(pv.I0), abs(pv.I2), 1.0)
    res1 = abs(4.0 * h * pv.J0 + pv.J2 - 3.0 * pv.I0) / scale
    res2 = abs(4.0 * h * pv.J0 + (12.0 * h + 4.0) * pv.J2 - 15.0 * pv.I2) / scale
    return res1, res2


def case_grid(case: AnnulusCase, n: int) -> np.ndarray:
    """A log-graded probe grid strictly inside the case interval."""
    if case.name == "global-center" or case.name == "eight-exterior":
        return np.geomspace(1e-3, 1e3, n)
    if case.name == "truncated-pendulum":
        lo, hi = 0.0, 0.25
    else:
        lo, hi = -0.25, 0.0
    m = n // 2
    width = hi - lo
    from_lo = lo + np.geomspace(1e-5, 0.49, m) * width
    from_hi = hi - np.geomspace(1e-5, 0.49, n - m) * width
    return np.sort(np.concatenate([from_lo, from_hi]))


# ---------------------------------------------------------------------------
# Picard-Fuchs continuation (eight loop, domain C minus (-inf, 0])
# ---------------------------------------------------------------------------

H_REF = 1.0


def _pf_J(h: complex, I0: complex, I2: complex) -> tuple[complex, complex]:
    """(J0, J2) from (I0, I2) via the Picard-Fuchs system."""
    J2 = (5.0 * I2 - I0) / (4.0 * h + 1.0)
    J0 = (3.0 * I0 - J2) / (4.0 * h)
    return J0, J2


def _pf_rhs_factory(path):
    """RHS of dI/dt along h(t) for a parametrized path piece."""

    def rhs(t, y):
        h, dh = path(t)
        I0 = y[0] + 1j * y[1]
        I2 = y[2] + 1j * y[3]
        J0, J2 = _pf_J(h, I0, I2)
        d0 = dh * J0
        d2 = dh * J2
        return [d0.real, d0.imag, d2.real, d2.imag]

    return rhs


def _solve_piece(path, t0, t1, I0, I2, rtol=1e-12, dense=False):
    sol = solve_ivp(
        _pf_rhs_factory(path),
        (t0, t1),
        [I0.real, I0.imag, I2.real, I2.imag],
        method="DOP853",
        rtol=rtol,
        atol=1e-14,
        dense_output=dense,
    )
    if not sol.success:
        raise RuntimeError(f"Picard-Fuchs continuation failed: {sol.message}")
    y = sol.y[:, -1]
    return (y[0] + 1j * y[1], y[2] + 1j * y[3]), sol


def _line_path(za: complex, zb: complex):
    dz = zb - za

    def path(t):
        return za + t * dz, dz

    return path


def slit_avoiding_waypoints(h: complex, h_ref: float = H_REF, margin: float = 1.0) -> list[complex]:
    """Piecewise-linear path from h_ref to h staying clear of 0 and -1/4.

    Real positive targets go straight; off-axis targets travel at height
    +-margin above/below the axis and descend vertically at Re(h).
    """
    h = complex(h)
    if h.imag == 0.0 and h.real > 0.0:
        return [complex(h_ref), h]
    if h.imag == 0.0:
        raise ValueError("target on the cut (-inf, 0]")
    sgn = 1.0 if h.imag > 0 else -1.0
    lift = sgn * max(margin, abs(h.imag))
    return [complex(h_ref), complex(h_ref, lift), complex(h.real, lift), h]


def pf_continue(
    h: complex,
    tol: float = 1e-12,
    h_ref: float = H_REF,
    rtol: float = 1e-12,
) -> PeriodValue:
    """Continue the exterior-oval periods to h in the cut plane (ODE route)."""
    seed = periods_real(EIGHT_EXTERIOR, h_ref, tol)
    I0, I2 = complex(seed.I0), complex(seed.I2)
    pts = slit_avoiding_waypoints(h, h_ref)
    for za, zb in zip(pts[:-1], pts[1:]):
        if za == zb:
            continue
        (I0, I2), _ = _solve_piece(_line_path(za, zb), 0.0, 1.0, I0, I2, rtol=rtol)
    J0, J2 = _pf_J(complex(h), I0, I2)
    tag = "real-oval" if complex(h).imag == 0 else ("plus-side" if complex(h).imag > 0 else "minus-side")
    return PeriodValue(
        I0=I0, I2=I2, J0=J0, J2=J2, h=complex(h), case="eight-exterior",
        branch_tag=tag, est_error=max(seed.est_error, rtol),
    )


# ---------------------------------------------------------------------------
# Contour route: Joukowski ellipse around a tracked branch-point pair
# ---------------------------------------------------------------------------


def _branch_pair_candidates(h: complex) -> tuple[complex, complex]:
    """Representatives (r_outer, r_inner) of the two +- root pairs of y^2."""
    s = cmath.sqrt(1.0 + 4.0 * h)
    inner_sq = -4.0 * h / (1.0 + s)  # 1 - s without cancellation near h = 0
    return cmath.sqrt(1.0 + s), cmath.sqrt(inner_sq)


def _track_root(q_prev: complex, h: complex) -> tuple[complex, complex]:
    """The root continuing q_prev at the new h, plus an other-pair root."""
    r1, r2 = _branch_pair_candidates(h)
    cands = [r1, -r1, r2, -r2]
    dists = [abs(c - q_prev) for c in cands]
    order = sorted(range(4), key=dists.__getitem__)
    best = order[0]
    q = cands[best]
    other = r2 if best in (0, 1) else r1
    # ambiguous tracking: nearest root not clearly closer than the nearest
    # root of the other pair
    other_best = min(dists[2], dists[3]) if best in (0, 1) else min(dists[0], dists[1])
    if other_best < 2.0 * dists[best] and dists[best] > 0.05 * abs(q):
        raise ContourObstructionError(
            f"branch-point tracking ambiguous near h={h}: refine the path"
        )
    return q, other


def _ellipse_periods(h: complex, q: complex, other: complex, tol: float,
                     sigma_min: float = 1e-2, n_max: int = 32768):
    """Loop integrals around the pair {q, -q} on x = q cosh(sigma + i theta)."""
    ws = cmath.acosh(other / q)
    sep = abs(ws.real)
    if sep < sigma_min:
        raise ContourObstructionError(
            f"contour deformation required at h={h}: branch-point pair "
            f"separation {sep:.2e} below {sigma_min}"
        )
    sigma = min(0.5 * sep, 1.0)
    prev = None
    n = 256
    while n <= n_max:
        theta = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
        zc = q * np.cosh(sigma + 1j * theta)
        dz = 1j * q * np.sinh(sigma + 1j * theta)
        S = 2.0 * h + zc * zc - 0.5 * zc**4
        sq = np.sqrt(S)
        # continuous branch of y along the loop
        flips = np.real(sq[1:] * np.conj(sq[:-1])) < 0.0
        signs = np.ones(n)
        signs[1:] = np.where(np.cumsum(flips) % 2 == 1, -1.0, 1.0)
        closed_ok = (signs[-1] * (1.0 if np.real(sq[0] * np.conj(sq[-1])) >= 0 else -1.0)) > 0
        y = sq * signs
        step = 2.0 * np.pi / n
        vals = np.array(
            [
                (y * dz).sum() * step,
                (zc * zc * y * dz).sum() * step,
                (dz / y).sum() * step,
                (zc * zc * dz / y).sum() * step,
            ]
        )
        if prev is not None and closed_ok:
            scale = max(np.max(np.abs(vals)), 1e-300)
            err = float(np.max(np.abs(vals - prev)))
            if err < tol * scale:
                return vals, err / scale
        prev = vals
        n *= 2
    raise QuadratureError(f"contour quadrature did not converge at h={h}")


def periods_complex(
    h: complex,
    tol: float = 1e-12,
    route: str = "contour",
    h_ref: float = H_REF,
    max_steps: int = 4096,
    delta_min: float = 1e-6,
) -> PeriodValue:
    """Exterior-oval periods continued to complex h (cut plane).

    route='contour': straight-line homotopy from h_ref with branch-point
    tracking and ellipse contours; errors out on homotopy obstructions
    rather than deforming.  route='pf-ode': Picard-Fuchs continuation.
    Points closer than ``delta_min`` to the cut are rejected.
    """
    h = complex(h)
    slit_dist = abs(h.imag) if h.real <= 0.0 else abs(h)
    if h.imag == 0.0 and h.real <= 0.0:
        raise ValueError("h on the cut (-inf, 0]")
    if slit_dist < delta_min:
        raise ValueError(f"h={h} within {delta_min} of the cut")
    if route == "pf-ode":
        return pf_continue(h, tol=tol, h_ref=h_ref)
    if route != "contour":
        raise ValueError(f"unknown route {route!r}")

    seed = periods_real(EIGHT_EXTERIOR, h_ref, tol)
    ref = np.array([seed.I0, seed.I2, seed.J0, seed.J2], dtype=complex)
    geo = oval_geometry(EIGHT_EXTERIOR, h_ref)
    state_q = complex(geo.x_hi)
    state_vals = ref.copy()
    state_h = complex(h_ref)

    n_steps = 8
    while True:
        try:
            q = state_q
            vals = state_vals.copy()
            for k in range(1, n_steps + 1):
                hk = state_h + (h - state_h) * (k / n_steps)
                q, other = _track_root(q, hk)
                raw, err = _ellipse_periods(hk, q, other, tol)
                # raw order: (I0, I2, J0, J2) up to a common sign
                dp = np.max(np.abs(raw - vals))
                dm = np.max(np.abs(raw + vals))
                if min(dp, dm) > 0.5 * max(np.max(np.abs(vals)), 1e-300) and n_steps < max_steps:
                    raise _NeedRefine()
                vals = raw if dp <= dm else -raw
            break
        except _NeedRefine:
            n_steps *= 2
            continue

    tag = "real-oval" if h.imag == 0 else ("plus-side" if h.imag > 0 else "minus-side")
    return PeriodValue(
        I0=vals[0], I2=vals[1], J0=vals[2], J2=vals[3],
        h=h, case="eight-exterior", branch_tag=tag,
        est_error=max(err, seed.est_error),
    )


class _NeedRefine(Exception):
    pass


def vanishing_cycle_periods(h: float, tol: float = 1e-12) -> PeriodValue:
    """Periods over the cycle around the inner branch-point pair, -1/4 < h < 0.

    This is the cycle that shrinks to the origin as h -> 0; its orientation
    (overall sign) is chosen deterministically, not matched to a reference.
    """
    if not (-0.25 < h < 0.0):
        raise ValueError("vanishing cycle tabulated for -1/4 < h < 0")
    r_out, r_in = _branch_pair_candidates(complex(h))
    vals, err = _ellipse_periods(complex(h), r_in, r_out, tol)
    return PeriodValue(
        I0=vals[0], I2=vals[1], J0=vals[2], J2=vals[3],
        h=complex(h), case="eight-interior", branch_tag="vanishing-cycle",
        est_error=err,
    )


# ---------------------------------------------------------------------------
# Wronskians along the cut
# ---------------------------------------------------------------------------


def _extrapolate_to_zero(xs: list[float], ys: list[complex]) -> complex:
    """Neville polynomial extrapolation of (xs, ys) to x = 0."""
    ys = list(ys)
    n = len(ys)
    for level in range(1, n):
        for i in range(n - level):
            x0, x1 = xs[i], xs[i + level]
            ys[i] = (x0 * ys[i + 1] - x1 * ys[i]) / (x0 - x1)
    return ys[0]


def wronskians(
    h: float,
    deltas: tuple[float, ...] = (1e-3, 5e-4, 2.5e-4),
    tol: float = 1e-12,
) -> tuple[complex, str]:
    """W = J0(h+) J2(h-) - J0(h-) J2(h+) at a point of the cut, h < 0.

    The one-sided values are continued with the Picard-Fuchs route at the
    offsets ``deltas`` and Richardson-extrapolated to the cut.  Tagged 'W1'
    on (-1/4, 0) and 'W2' on (-inf, -1/4).
    """
    if h >= 0.0 or h == -0.25:
        raise ValueError("W is defined for h < 0, h != -1/4")
    ws = []
    for d in deltas:
        up = pf_continue(complex(h, d), tol=tol)
        dn = pf_continue(complex(h, -d), tol=tol)
        ws.append(up.J0 * dn.J2 - dn.J0 * up.J2)
    w = _extrapolate_to_zero(list(deltas), ws)
    return w, ("W1" if -0.25 < h < 0.0 else "W2")
