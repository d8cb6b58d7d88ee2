"""Reference catalog of hand-derived canonical decompositions.

Each entry records a monomial one-form together with a full (u, v, r, R)
quadruple valid for one Hamiltonian sign case.  The catalog serves two
purposes: the quadruples are verified exactly as identities, and the
reduction engine must independently reproduce each (u, v) pair.  Entries
``*-xky2`` and ``*-xky4`` are one-parameter families in the x-power k;
``default_k`` fixes the representative used when a single instance is
wanted, and :func:`instantiate` produces any other k.

(r, R) representatives here generally differ from what the reduction
engines emit; both satisfy the same identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .exactalg import PolyU, PolyXY, compose_in_h
from .forms import (
    AnnulusCase,
    CanonicalDecomposition,
    EIGHT_INTERIOR,
    GLOBAL_CENTER,
    OneForm,
    TRUNCATED_PENDULUM,
)

F = Fraction


@dataclass(frozen=True)
class CatalogEntry:
    ident: str
    case: AnnulusCase
    form: OneForm
    decomposition: CanonicalDecomposition
    family_k: int | None = None  # set when the entry is an instance of a k-family


def _mono(i: int, j: int) -> OneForm:
    return OneForm(PolyXY.monomial(i, j))


def _uv(pairs: dict[int, Fraction]) -> PolyU:
    return PolyU(pairs, "H")


def _poly_h(case: AnnulusCase, terms: dict[tuple[int, int, int], Fraction]) -> PolyXY:
    """Build sum of c * H^e x^a y^b with H substituted for the given case."""
    H = case.hamiltonian()
    out = PolyXY.zero()
    hp = [PolyXY.const(1)]
    for (e, a, b), c in sorted(terms.items()):
        while len(hp) <= e:
            hp.append(hp[-1] * H)
        out = out + (hp[e] * PolyXY.monomial(a, b)).scale(c)
    return out


def _entry(ident, case, form, u, v, r_terms, R_terms, family_k=None) -> CatalogEntry:
    dec = CanonicalDecomposition(
        u=_uv(u), v=_uv(v), r=_poly_h(case, r_terms), R=_poly_h(case, R_terms)
    )
    return CatalogEntry(ident, case, form, dec, family_k)


# -- k-families (global center only) -----------------------------------------
#
# x^k y^2 dx = -2/(k+1) x^(k+1) dH
#              + d[ 2H/(k+1) x^(k+1) - 1/(k+3) x^(k+3) - 1/(2(k+5)) x^(k+5) ]
# x^k y^4 dx = -( 8H/(k+1) x^(k+1) - 4/(k+3) x^(k+3) - 2/(k+5) x^(k+5) ) dH
#              + d[ (4H^2/(k+1) - 4H/(k+3) x^2 + (1 - 2H)/(k+5) x^4
#                    + 1/(k+7) x^6 + 1/(4(k+9)) x^8) x^(k+1) ]


def family_xky2(case: AnnulusCase, k: int) -> CatalogEntry:
    if case.name != "global-center":
        raise ValueError("the x^k y^2 family is tabulated for the global center only")
    return _entry(
        f"gc-xky2[k={k}]",
        case,
        _mono(k, 2),
        {},
        {},
        {(0, k + 1, 0): F(-2, k + 1)},
        {
            (1, k + 1, 0): F(2, k + 1),
            (0, k + 3, 0): F(-1, k + 3),
            (0, k + 5, 0): F(-1, 2 * (k + 5)),
        },
        family_k=k,
    )


def family_xky4(case: AnnulusCase, k: int) -> CatalogEntry:
    if case.name != "global-center":
        raise ValueError("the x^k y^4 family is tabulated for the global center only")
    return _entry(
        f"gc-xky4[k={k}]",
        case,
        _mono(k, 4),
        {},
        {},
        {
            (1, k + 1, 0): F(-8, k + 1),
            (0, k + 3, 0): F(4, k + 3),
            (0, k + 5, 0): F(2, k + 5),
        },
        {
            (2, k + 1, 0): F(4, k + 1),
            (1, k + 3, 0): F(-4, k + 3),
            (0, k + 5, 0): F(1, k + 5),
            (1, k + 5, 0): F(-2, k + 5),
            (0, k + 7, 0): F(1, k + 7),
            (0, k + 9, 0): F(1, 4 * (k + 9)),
        },
        family_k=k,
    )


def _prefix(case: AnnulusCase) -> str:
    return {"global-center": "gc", "truncated-pendulum": "tp", "eight-interior": "el"}[
        case.name
    ]


def _global_center() -> list[CatalogEntry]:
    c = GLOBAL_CENTER
    return [
        # gc-1: y^3 dx
        _entry(
            "gc-1",
            c,
            _mono(0, 3),
            {0: F(-3, 7)},
            {1: F(12, 7)},
            {(0, 1, 1): F(-3, 7)},
            {(0, 1, 3): F(1, 7)},
        ),
        # gc-2: x^4 y dx
        _entry(
            "gc-2",
            c,
            _mono(4, 1),
            {0: F(-8, 7)},
            {1: F(4, 7)},
            {(0, 1, 1): F(6, 7)},
            {(0, 1, 3): F(-2, 7)},
        ),
        # gc-3: y^5 dx
        _entry(
            "gc-3",
            c,
            _mono(0, 5),
            {1: F(-320, 231), 0: F(-40, 231)},
            {2: F(240, 77), 1: F(20, 231)},
            {
                (0, 1, 1): F(10, 77),
                (0, 3, 1): F(5, 33),
                (1, 1, 1): F(-60, 77),
                (0, 1, 3): F(-5, 7),
            },
            {
                (1, 1, 3): F(20, 77),
                (0, 1, 5): F(1, 11),
                (0, 1, 3): F(-10, 231),
                (0, 3, 3): F(-5, 99),
            },
        ),
        # gc-4: x^6 y dx
        _entry(
            "gc-4",
            c,
            _mono(6, 1),
            {1: F(4, 3), 0: F(32, 21)},
            {1: F(-16, 21)},
            {(0, 3, 1): F(2, 3), (0, 1, 1): F(-8, 7)},
            {(0, 3, 3): F(-2, 9), (0, 1, 3): F(8, 21)},
        ),
        # gc-5: x^2 y^3 dx
        _entry(
            "gc-5",
            c,
            _mono(2, 3),
            {1: F(4, 3), 0: F(8, 21)},
            {1: F(-4, 21)},
            {(0, 1, 1): F(-2, 7), (0, 3, 1): F(-1, 3)},
            {(0, 3, 3): F(1, 9), (0, 1, 3): F(2, 21)},
        ),
        # gc-6: x^2 y^5 dx
        _entry(
            "gc-6",
            c,
            _mono(2, 5),
            {2: F(80, 39), 1: F(3620, 3003), 0: F(160, 1001)},
            {2: F(-1600, 3003), 1: F(-80, 1001)},
            {
                (1, 1, 1): F(-380, 1001),
                (1, 3, 1): F(-20, 39),
                (0, 1, 3): F(-130, 273),
                (0, 3, 3): F(-5, 9),
                (0, 3, 1): F(-20, 143),
                (0, 1, 1): F(-120, 1001),
            },
            {
                (0, 3, 5): F(1, 13),
                (0, 1, 5): F(10, 143),
                (1, 3, 3): F(20, 117),
                (0, 3, 3): F(20, 429),
                (0, 1, 3): F(40, 1001),
                (1, 1, 3): F(380, 3003),
            },
        ),
        # gc-7: x y^4 dx
        _entry(
            "gc-7",
            c,
            _mono(1, 4),
            {},
            {},
            {
                (1, 2, 0): F(-8, 3),
                (0, 2, 0): F(-2, 3),
                (0, 0, 2): F(-2, 3),
                (0, 2, 2): F(-2, 3),
            },
            {
                (2, 2, 0): F(2),
                (2, 0, 0): F(2, 3),
                (1, 4, 0): F(-1),
                (0, 6, 0): F(1, 6),
                (1, 6, 0): F(-1, 3),
                (0, 8, 0): F(1, 8),
                (0, 10, 0): F(1, 40),
            },
        ),
        # gc-8 / gc-9: the k-families at their default instance
        family_xky2(c, 2),
        family_xky4(c, 2),
    ]


def _truncated_pendulum() -> list[CatalogEntry]:
    c = TRUNCATED_PENDULUM
    return [
        # tp-1: y^3 dx
        _entry(
            "tp-1",
            c,
            _mono(0, 3),
            {0: F(-3, 7)},
            {1: F(12, 7)},
            {(0, 1, 1): F(-3, 7)},
            {(0, 1, 3): F(1, 7)},
        ),
        # tp-2: x^4 y dx
        _entry(
            "tp-2",
            c,
            _mono(4, 1),
            {0: F(8, 7)},
            {1: F(-4, 7)},
            {(0, 1, 1): F(-6, 7)},
            {(0, 1, 3): F(2, 7)},
        ),
        # tp-3: y^5 dx
        _entry(
            "tp-3",
            c,
            _mono(0, 5),
            {1: F(-320, 231), 0: F(40, 231)},
            {2: F(240, 77), 1: F(-20, 231)},
            {
                (0, 1, 1): F(-10, 77),
                (0, 3, 1): F(5, 33),
                (1, 1, 1): F(-60, 77),
                (0, 1, 3): F(-5, 7),
            },
            {
                (1, 1, 3): F(20, 77),
                (0, 1, 5): F(1, 11),
                (0, 1, 3): F(10, 231),
                (0, 3, 3): F(-5, 99),
            },
        ),
        # tp-4: x^6 y dx
        _entry(
            "tp-4",
            c,
            _mono(6, 1),
            {1: F(-4, 3), 0: F(32, 21)},
            {1: F(-16, 21)},
            {(0, 3, 1): F(-2, 3), (0, 1, 1): F(-8, 7)},
            {(0, 3, 3): F(2, 9), (0, 1, 3): F(8, 21)},
        ),
        # tp-5: x^2 y^3 dx
        _entry(
            "tp-5",
            c,
            _mono(2, 3),
            {1: F(4, 3), 0: F(-8, 21)},
            {1: F(4, 21)},
            {(0, 1, 1): F(2, 7), (0, 3, 1): F(-1, 3)},
            {(0, 3, 3): F(1, 9), (0, 1, 3): F(-2, 21)},
        ),
        # tp-6: x^2 y^5 dx
        _entry(
            "tp-6",
            c,
            _mono(2, 5),
            {2: F(80, 39), 1: F(-3620, 3003), 0: F(160, 1001)},
            {2: F(1600, 3003), 1: F(-80, 1001)},
            {
                (1, 1, 1): F(380, 1001),
                (1, 3, 1): F(-20, 39),
                (0, 1, 3): F(130, 273),
                (0, 3, 3): F(-5, 9),
                (0, 3, 1): F(20, 143),
                (0, 1, 1): F(-120, 1001),
            },
            {
                (0, 3, 5): F(1, 13),
                (0, 1, 5): F(-10, 143),
                (1, 3, 3): F(20, 117),
                (0, 3, 3): F(-20, 429),
                (0, 1, 3): F(40, 1001),
                (1, 1, 3): F(-380, 3003),
            },
        ),
        # tp-7: x y^4 dx
        _entry(
            "tp-7",
            c,
            _mono(1, 4),
            {},
            {},
            {
                (1, 2, 0): F(-8, 3),
                (0, 2, 0): F(2, 3),
                (0, 0, 2): F(2, 3),
                (0, 2, 2): F(-2, 3),
            },
            {
                (2, 2, 0): F(2),
                (2, 0, 0): F(-2, 3),
                (1, 4, 0): F(-1),
                (0, 6, 0): F(1, 6),
                (1, 6, 0): F(1, 3),
                (0, 8, 0): F(-1, 8),
                (0, 10, 0): F(1, 40),
            },
        ),
    ]


def _eight_loop() -> list[CatalogEntry]:
    c = EIGHT_INTERIOR  # reduction depends on (a, b) only; shared with the exterior
    return [
        # el-1: y^3 dx
        _entry(
            "el-1",
            c,
            _mono(0, 3),
            {0: F(3, 7)},
            {1: F(12, 7)},
            {(0, 1, 1): F(-3, 7)},
            {(0, 1, 3): F(1, 7)},
        ),
        # el-2: x^4 y dx
        _entry(
            "el-2",
            c,
            _mono(4, 1),
            {0: F(8, 7)},
            {1: F(4, 7)},
            {(0, 1, 1): F(6, 7)},
            {(0, 1, 3): F(-2, 7)},
        ),
        # el-3: y^5 dx
        _entry(
            "el-3",
            c,
            _mono(0, 5),
            {1: F(320, 231), 0: F(40, 231)},
            {2: F(240, 77), 1: F(20, 231)},
            {
                (0, 1, 1): F(10, 77),
                (0, 3, 1): F(-5, 33),
                (1, 1, 1): F(-60, 77),
                (0, 1, 3): F(-5, 7),
            },
            {
                (1, 1, 3): F(20, 77),
                (0, 1, 5): F(1, 11),
                (0, 1, 3): F(-10, 231),
                (0, 3, 3): F(5, 99),
            },
        ),
        # el-4: x^6 y dx
        _entry(
            "el-4",
            c,
            _mono(6, 1),
            {1: F(4, 3), 0: F(32, 21)},
            {1: F(16, 21)},
            {(0, 3, 1): F(2, 3), (0, 1, 1): F(8, 7)},
            {(0, 3, 3): F(-2, 9), (0, 1, 3): F(-8, 21)},
        ),
        # el-5: x^2 y^3 dx
        _entry(
            "el-5",
            c,
            _mono(2, 3),
            {1: F(4, 3), 0: F(8, 21)},
            {1: F(4, 21)},
            {(0, 1, 1): F(2, 7), (0, 3, 1): F(-1, 3)},
            {(0, 3, 3): F(1, 9), (0, 1, 3): F(-2, 21)},
        ),
        # el-6: x^2 y^5 dx
        _entry(
            "el-6",
            c,
            _mono(2, 5),
            {2: F(80, 39), 1: F(3620, 3003), 0: F(160, 1001)},
            {2: F(1600, 3003), 1: F(80, 1001)},
            {
                (1, 1, 1): F(380, 1001),
                (1, 3, 1): F(-20, 39),
                (0, 1, 3): F(130, 273),
                (0, 3, 3): F(-5, 9),
                (0, 3, 1): F(-20, 143),
                (0, 1, 1): F(120, 1001),
            },
            {
                (0, 3, 5): F(1, 13),
                (0, 1, 5): F(-10, 143),
                (1, 3, 3): F(20, 117),
                (0, 3, 3): F(20, 429),
                (0, 1, 3): F(-40, 1001),
                (1, 1, 3): F(-380, 3003),
            },
        ),
        # el-7: x y^4 dx
        _entry(
            "el-7",
            c,
            _mono(1, 4),
            {},
            {},
            {
                (1, 2, 0): F(-8, 3),
                (0, 2, 0): F(-2, 3),
                (0, 0, 2): F(2, 3),
                (0, 2, 2): F(-2, 3),
            },
            {
                (2, 2, 0): F(2),
                (2, 0, 0): F(-2, 3),
                (1, 4, 0): F(1),
                (0, 6, 0): F(1, 6),
                (1, 6, 0): F(-1, 3),
                (0, 8, 0): F(-1, 8),
                (0, 10, 0): F(1, 40),
            },
        ),
    ]


def all_entries() -> list[CatalogEntry]:
    """All 23 catalog entries (families at their default k = 2)."""
    return _global_center() + _truncated_pendulum() + _eight_loop()


FAMILIES: dict[str, Callable[[AnnulusCase, int], CatalogEntry]] = {
    "xky2": family_xky2,
    "xky4": family_xky4,
}


def instantiate(family: str, case: AnnulusCase, k: int) -> CatalogEntry:
    """Instantiate a k-family entry for an arbitrary x-power k >= 0."""
    return FAMILIES[family](case, k)
