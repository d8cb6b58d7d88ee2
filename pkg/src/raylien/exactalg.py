"""Exact rational arithmetic: sparse polynomials and linear solving.

Every symbolic computation in the package runs over ``fractions.Fraction``
(arbitrary precision, eagerly normalized, positive denominator), so results
are exact and identity tests are reliable.  Three sparse polynomial flavours
are provided:

* :class:`PolyU`   -- univariate, tagged with its variable name ('h', 'H', 'eps'),
* :class:`PolyXY`  -- bivariate in the phase-plane variables (x, y),
* :class:`MultiPoly` -- n-variate, used for ideals in the perturbation
  parameters.

All polynomial values are immutable after construction and safe to share
across threads.  Zero coefficients are never stored; the zero polynomial has
an empty coefficient map and degree -1 (a finite stand-in for "minus
infinity" that keeps comparisons simple).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rational = Fraction

RationalLike = Union[Fraction, int, str]


def rat(value: RationalLike) -> Fraction:
    """Coerce ints, 'num/den' strings, or Fractions to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def rat_str(value: Fraction) -> str:
    """Serialize a Fraction as 'num/den' (or 'num' when integral)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class VariableMismatchError(TypeError):
    """Raised when an operation mixes polynomials over different variables."""


def _clean(coeffs: dict) -> dict:
    return {k: c for k, c in coeffs.items() if c != 0}


class PolyU:
    """Sparse univariate polynomial over Fraction with a variable tag."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Mapping[int, RationalLike] | None = None, var: str = "h"):
        data = {}
        if coeffs:
            for k, c in coeffs.items():
                if k < 0:
                    raise ValueError("negative exponent")
                c = rat(c)
                if c != 0:
                    data[int(k)] = c
        object.__setattr__(self, "coeffs", data)
        object.__setattr__(self, "var", var)

    def __setattr__(self, *args):
        raise AttributeError("PolyU is immutable")

    @classmethod
    def zero(cls, var: str = "h") -> PolyU:
        return cls({}, var)

    @classmethod
    def const(cls, c: RationalLike, var: str = "h") -> PolyU:
        return cls({0: rat(c)}, var)

    @classmethod
    def variable(cls, var: str = "h") -> PolyU:
        return cls({1: Fraction(1)}, var)

    @classmethod
    def from_coeff_list(cls, coeffs: Sequence[RationalLike], var: str = "h") -> PolyU:
        """Build from [c0, c1, c2, ...] (ascending powers)."""
        return cls({k: rat(c) for k, c in enumerate(coeffs)}, var)

    def coeff_list(self) -> list[Fraction]:
        """Coefficients [c0 .. c_deg]; empty list for the zero polynomial."""
        if not self.coeffs:
            return []
        n = self.degree()
        return [self.coeffs.get(k, Fraction(0)) for k in range(n + 1)]

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max(self.coeffs) if self.coeffs else -1

    def valuation(self) -> int | None:
        """Smallest exponent with nonzero coefficient, None if zero."""
        return min(self.coeffs) if self.coeffs else None

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs.get(k, Fraction(0))

    def _check(self, other: PolyU):
        if self.var != other.var:
            raise VariableMismatchError(f"variable mismatch: {self.var} vs {other.var}")

    def __add__(self, other: PolyU) -> PolyU:
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return PolyU(_clean(out), self.var)

    def __neg__(self) -> PolyU:
        return PolyU({k: -c for k, c in self.coeffs.items()}, self.var)

    def __sub__(self, other: PolyU) -> PolyU:
        return self + (-other)

    def __mul__(self, other: PolyU) -> PolyU:
        self._check(other)
        out: dict[int, Fraction] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                k = i + j
                out[k] = out.get(k, Fraction(0)) + a * b
        return PolyU(_clean(out), self.var)

    def scale(self, c: RationalLike) -> PolyU:
        c = rat(c)
        return PolyU({k: a * c for k, a in self.coeffs.items()}, self.var)

    def __pow__(self, n: int) -> PolyU:
        if n < 0:
            raise ValueError("negative power")
        out = PolyU.const(1, self.var)
        for _ in range(n):
            out = out * self
        return out

    def derivative(self) -> PolyU:
        return PolyU({k - 1: k * c for k, c in self.coeffs.items() if k >= 1}, self.var)

    def shift_var(self, var: str) -> PolyU:
        """Same coefficients under a new variable tag (e.g. H -> h)."""
        return PolyU(self.coeffs, var)

    def __call__(self, x):
        """Evaluate at x (Fraction, float, or complex) via Horner."""
        if not self.coeffs:
            return 0 * x if not isinstance(x, Fraction) else Fraction(0)
        n = self.degree()
        acc = self.coeffs.get(n, Fraction(0))
        if not isinstance(x, Fraction):
            acc = float(acc) if not isinstance(x, complex) else complex(acc)
        for k in range(n - 1, -1, -1):
            c = self.coeffs.get(k, Fraction(0))
            if not isinstance(x, Fraction):
                c = float(c) if not isinstance(x, complex) else complex(c)
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyU) and self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, tuple(sorted(self.coeffs.items()))))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs, reverse=True):
            c = self.coeffs[k]
            mono = "1" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            if k == 0:
                parts.append(rat_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{rat_str(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


class PolyXY:
    """Sparse bivariate polynomial in (x, y) over Fraction."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], RationalLike] | None = None):
        data = {}
        if coeffs:
            for (i, j), c in coeffs.items():
                if i < 0 or j < 0:
                    raise ValueError("negative exponent")
                c = rat(c)
                if c != 0:
                    data[(int(i), int(j))] = c
        object.__setattr__(self, "coeffs", data)

    def __setattr__(self, *args):
        raise AttributeError("PolyXY is immutable")

    @classmethod
    def zero(cls) -> PolyXY:
        return cls({})

    @classmethod
    def const(cls, c: RationalLike) -> PolyXY:
        return cls({(0, 0): rat(c)})

    @classmethod
    def monomial(cls, i: int, j: int, c: RationalLike = 1) -> PolyXY:
        return cls({(i, j): rat(c)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def total_degree(self) -> int:
        return max(i + j for i, j in self.coeffs) if self.coeffs else -1

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self.coeffs.get(key, Fraction(0))

    def __add__(self, other: PolyXY) -> PolyXY:
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return PolyXY(_clean(out))

    def __neg__(self) -> PolyXY:
        return PolyXY({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: PolyXY) -> PolyXY:
        return self + (-other)

    def __mul__(self, other: PolyXY) -> PolyXY:
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), a in self.coeffs.items():
            for (i2, j2), b in other.coeffs.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, Fraction(0)) + a * b
        return PolyXY(_clean(out))

    def scale(self, c: RationalLike) -> PolyXY:
        c = rat(c)
        return PolyXY({k: a * c for k, a in self.coeffs.items()})

    def __pow__(self, n: int) -> PolyXY:
        if n < 0:
            raise ValueError("negative power")
        out = PolyXY.const(1)
        for _ in range(n):
            out = out * self
        return out

    def diff_x(self) -> PolyXY:
        return PolyXY({(i - 1, j): i * c for (i, j), c in self.coeffs.items() if i >= 1})

    def diff_y(self) -> PolyXY:
        return PolyXY({(i, j - 1): j * c for (i, j), c in self.coeffs.items() if j >= 1})

    def integrate_y(self) -> PolyXY:
        """Antiderivative in y with zero constant term."""
        return PolyXY({(i, j + 1): c / (j + 1) for (i, j), c in self.coeffs.items()})

    def __call__(self, x, y):
        total = 0
        for (i, j), c in self.coeffs.items():
            total = total + (float(c) if not isinstance(x, Fraction) else c) * x**i * y**j
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyXY) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j) in sorted(self.coeffs, key=lambda k: (k[0] + k[1], k), reverse=True):
            c = self.coeffs[(i, j)]
            mono = "".join(
                s
                for s in (
                    "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                    "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
                )
                if s
            )
            if not mono:
                parts.append(rat_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{rat_str(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


class MultiPoly:
    """Sparse n-variate polynomial over Fraction (exponent-tuple keys)."""

    __slots__ = ("coeffs", "nvars")

    def __init__(self, nvars: int, coeffs: Mapping[tuple[int, ...], RationalLike] | None = None):
        data = {}
        if coeffs:
            for e, c in coeffs.items():
                e = tuple(int(k) for k in e)
                if len(e) != nvars or any(k < 0 for k in e):
                    raise ValueError(f"bad exponent tuple {e} for nvars={nvars}")
                c = rat(c)
                if c != 0:
                    data[e] = c
        object.__setattr__(self, "coeffs", data)
        object.__setattr__(self, "nvars", nvars)

    def __setattr__(self, *args):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def zero(cls, nvars: int) -> MultiPoly:
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, c: RationalLike) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: rat(c)})

    @classmethod
    def variable(cls, nvars: int, idx: int) -> MultiPoly:
        e = [0] * nvars
        e[idx] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def linear_form(cls, coeffs: Sequence[RationalLike]) -> MultiPoly:
        n = len(coeffs)
        out = {}
        for i, c in enumerate(coeffs):
            c = rat(c)
            if c != 0:
                e = [0] * n
                e[i] = 1
                out[tuple(e)] = c
        return cls(n, out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def total_degree(self) -> int:
        return max(sum(e) for e in self.coeffs) if self.coeffs else -1

    def _check(self, other: MultiPoly):
        if self.nvars != other.nvars:
            raise VariableMismatchError("nvars mismatch")

    def __add__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiPoly(self.nvars, _clean(out))

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.nvars, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        return self + (-other)

    def __mul__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, a in self.coeffs.items():
            for e2, b in other.coeffs.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + a * b
        return MultiPoly(self.nvars, _clean(out))

    def scale(self, c: RationalLike) -> MultiPoly:
        c = rat(c)
        return MultiPoly(self.nvars, {e: a * c for e, a in self.coeffs.items()})

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise ValueError("negative power")
        out = MultiPoly.const(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def truncate(self, max_degree: int) -> MultiPoly:
        """Drop all terms of total degree > max_degree."""
        return MultiPoly(
            self.nvars, {e: c for e, c in self.coeffs.items() if sum(e) <= max_degree}
        )

    def min_degree(self) -> int | None:
        """Smallest total degree present, None if zero."""
        return min(sum(e) for e in self.coeffs) if self.coeffs else None

    def compose_series(self, series: Sequence[PolyU]) -> PolyU:
        """Substitute a univariate series for each variable (all same tag)."""
        if len(series) != self.nvars:
            raise ValueError("wrong number of substitution series")
        var = series[0].var
        out = PolyU.zero(var)
        for e, c in self.coeffs.items():
            term = PolyU.const(c, var)
            for idx, k in enumerate(e):
                if k:
                    term = term * (series[idx] ** k)
            out = out + term
        return out

    def __call__(self, values: Sequence[RationalLike]) -> Fraction:
        vals = [rat(v) for v in values]
        total = Fraction(0)
        for e, c in self.coeffs.items():
            term = c
            for v, k in zip(vals, e):
                term *= v**k
            total += term
        return total

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultiPoly)
            and self.nvars == other.nvars
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.coeffs.items()))))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        names = [f"l{i+1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.coeffs, key=lambda e: (sum(e), e), reverse=True):
            c = self.coeffs[e]
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(rat_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{rat_str(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def hamiltonian_xy(a: RationalLike, b: RationalLike) -> PolyXY:
    """H(x, y) = y^2/2 + (a/2) x^2 + (b/4) x^4 as an exact polynomial."""
    return PolyXY({(0, 2): Fraction(1, 2), (2, 0): rat(a) / 2, (4, 0): rat(b) / 4})


def compose_in_h(pu: PolyU, h_poly: PolyXY) -> PolyXY:
    """Substitute a bivariate polynomial for the variable of ``pu``."""
    out = PolyXY.zero()
    power = PolyXY.const(1)
    prev = 0
    for k in sorted(pu.coeffs):
        for _ in range(k - prev):
            power = power * h_poly
        prev = k
        out = out + power.scale(pu.coeffs[k])
    return out


def poly_arith(op: str, lhs, rhs=None):
    """Dispatch-style polynomial arithmetic (add / mul / scale / compose_H).

    Thin named wrapper over the operator methods; compose_H expects
    ``lhs`` univariate over 'H' and ``rhs`` the Hamiltonian as a PolyXY.
    """
    if op == "add":
        return lhs + rhs
    if op == "mul":
        return lhs * rhs
    if op == "scale":
        return lhs.scale(rhs)
    if op == "compose_H":
        if not isinstance(lhs, PolyU) or lhs.var != "H":
            raise VariableMismatchError("compose_H needs a PolyU over 'H'")
        if not isinstance(rhs, PolyXY):
            raise VariableMismatchError("compose_H needs the Hamiltonian as PolyXY")
        return compose_in_h(lhs, rhs)
    raise ValueError(f"unknown op {op!r}")


def solve_linear_exact(
    rows: Sequence[Sequence[RationalLike]],
    rhs: Sequence[RationalLike],
    column_order: Sequence[int] | None = None,
) -> list[Fraction] | None:
    """Solve A x = b exactly over the rationals.

    Gaussian elimination with a deterministic pivot rule: columns are
    visited in ``column_order`` (identity by default, callers pass a
    graded-lex order over their unknowns), the pivot row is the first
    remaining row with a nonzero entry, and free variables are set to
    zero.  Returns one exact solution or None when the system is
    inconsistent.  The result always satisfies A x - b = 0 exactly.
    """
    m = len(rows)
    a = [[rat(c) for c in row] for row in rows]
    b = [rat(c) for c in rhs]
    if len(b) != m:
        raise ValueError("rhs length mismatch")
    n = len(a[0]) if m else 0
    for row in a:
        if len(row) != n:
            raise ValueError("ragged matrix")
    order = list(column_order) if column_order is not None else list(range(n))
    if sorted(order) != list(range(n)):
        raise ValueError("column_order must be a permutation")

    pivots: list[tuple[int, int]] = []
    row_at = 0
    for col in order:
        piv = None
        for r in range(row_at, m):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        a[row_at], a[piv] = a[piv], a[row_at]
        b[row_at], b[piv] = b[piv], b[row_at]
        inv = 1 / a[row_at][col]
        a[row_at] = [c * inv for c in a[row_at]]
        b[row_at] *= inv
        for r in range(m):
            if r != row_at and a[r][col] != 0:
                f = a[r][col]
                a[r] = [c - f * p for c, p in zip(a[r], a[row_at])]
                b[r] -= f * b[row_at]
        pivots.append((row_at, col))
        row_at += 1
        if row_at == m:
            break

    for r in range(row_at, m):
        if b[r] != 0:
            return None

    x = [Fraction(0)] * n
    for r, col in pivots:
        x[col] = b[r]
    return x
