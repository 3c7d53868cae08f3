"""Closed-form upper and lower bounds for gamma_{b,2} and the sandwich report.

Upper bounds come from periodic constructions: a linear term b(.) plus a
tabulated constant c(.).  Lower bounds are ceilings of fractional
multipacking values.  All arithmetic is exact; ceilings and floors are taken
on Fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from . import tables
from .constructions import (
    best_lattice_ell,
    boundary_multipacking,
    cxc_lp_weights,
    p4_tiling,
)
from .errors import BoundConflict
from .exact import PROFILE_MAX_WIDTH, SearchLimits, exact_bnb, exact_profile_dp
from .grid import Family, GridGraph, make_grid
from .multipack import is_feasible_multipacking, mp_cost

PXP_STRIP_MAX = 12
PXC_STRIP_MAX = 22
CXC_STRIP_MAX = 25
LATTICE_MIN = 13
PXC_GENERAL_MIN_M = 23
PXC_GENERAL_MIN_N = 13
CXC_GENERAL_MIN = 26
VECTOR_MAX = 22

LONG_PATH_EXTRA = Fraction(2620, 13767)
PXP_EDGE_COEFF = Fraction(14287568, 75254411)
PXP_OFFSET = Fraction(177612468, 978307343)


class Bound(NamedTuple):
    value: int
    provenance: str


def canonical(g: GridGraph) -> GridGraph:
    """Swap to m <= n for the symmetric families; P_m x C_n keeps its orientation."""
    if g.family is not Family.PxC and g.m > g.n:
        return make_grid(g.family, g.n, g.m)
    return g


def _linear_term(section: str, param: int, n: int) -> Fraction:
    kind, a, d = tables.load("strip_formulas.json")[section]["linear"][str(param)]
    if kind == "floor":
        return Fraction(a * (n // d))
    if kind == "ceil":
        return Fraction(math.ceil(Fraction(a * n, d)))
    if kind == "linear":
        return Fraction(a * n, d)
    raise ValueError(f"unknown linear term kind {kind!r}")


def strip_period(section: str, param: int) -> int:
    return tables.load("strip_formulas.json")[section]["period"][str(param)]


def strip_bound(section: str, param: int, n: int) -> int:
    """b(param) evaluated at n plus c(param, n mod x)."""
    x = strip_period(section, param)
    val = _linear_term(section, param, n) + tables.ragged_lookup(section, param, n % x, n)
    assert val.denominator == 1, (section, param, n, val)
    return int(val)


def residue_multiplier(x: int, which: str = "pxc_general_correction") -> int:
    """0, 2, 3 or 4 by x mod 13; b(x) is this times x."""
    return tables.load("strip_formulas.json")[which][str(x % 13)]


def lattice_formula(m: int, n: int) -> Fraction:
    m, n = sorted((m, n))
    c = tables.grid_lookup("pxp_lattice", m % 13, n % 13)
    return Fraction(2 * m * n + 4 * (m + n) + c, 13)


def pxc_general_formula(m: int, n: int) -> Fraction:
    b = residue_multiplier(n, "pxc_general_correction") * n
    c = tables.grid_lookup("pxc_general", (m - 10) % 13, n % 13)
    return Fraction(2 * m * n + 4 * m + b + c, 13)


def cxc_general_formula(m: int, n: int) -> Fraction:
    m, n = sorted((m, n))
    bm = residue_multiplier(m, "cxc_general_correction") * m
    bn = residue_multiplier(n, "cxc_general_correction") * n
    c = tables.grid_lookup("cxc_general", m % 13, n % 13)
    return Fraction(2 * m * n + bm + bn - c, 13)


def upper_bound(g: GridGraph) -> Bound:
    g = canonical(g)
    m, n = g.m, g.n
    fam = g.family
    if fam is Family.PxP:
        if m <= PXP_STRIP_MAX:
            return Bound(strip_bound("pxp_strip", m, n), f"strip construction b(m)+c(m,n mod x), P_{m} x P_n")
        value = lattice_formula(m, n)
        if value.denominator != 1:
            raise AssertionError(f"lattice bound {value} is not an integer for {m}x{n}")
        return Bound(int(value), "mod-13 lattice construction, P_m x P_n with m,n >= 13")
    if fam is Family.PxC:
        if m <= PXC_STRIP_MAX:
            return Bound(strip_bound("pxc_strip", m, n), f"strip construction b(m)+c(m,n mod x), P_{m} x C_n")
        if n >= PXC_GENERAL_MIN_N:
            return Bound(math.floor(pxc_general_formula(m, n)),
                         "general construction 2mn/13+4m/13+b(n)/13+c/13, P_m x C_n with m>=23, n>=13")
        return Bound(strip_bound("pxc_long_path", n, m), f"long-path construction b(n)+c(n,m mod x), P_m x C_{n}")
    if m <= CXC_STRIP_MAX:
        return Bound(strip_bound("cxc_strip", m, n), f"strip construction b(m)+c(m,n mod x), C_{m} x C_n")
    return Bound(math.floor(cxc_general_formula(m, n)),
                 "general construction 2mn/13+(b(m)+b(n))/13-c/13, C_m x C_n with m,n >= 26")


def cxc_lp_value(m: int, n: int) -> Fraction:
    y, _, _ = cxc_lp_weights(m, n)
    return y * m * n


def lower_bound_value(g: GridGraph) -> tuple[Fraction, str]:
    """Exact LP value behind the lower bound, before rounding up."""
    g = canonical(g)
    m, n = g.m, g.n
    fam = g.family
    if fam is Family.CxC:
        return cxc_lp_value(m, n), "uniform multipacking on C_m x C_n (exact LP optimum)"
    if fam is Family.PxC:
        if m <= VECTOR_MAX:
            return tables.row_coefficient(m) * n, f"row-vector multipacking f(m)*n, P_{m} x C_n"
        if n >= 5:
            return (Fraction(2 * m * n, 13) + LONG_PATH_EXTRA * n,
                    "long-path row-vector multipacking 2mn/13+2620n/13767, P_m x C_n with m>=23")
        # C_m x C_n weights stay feasible when the cycle in the first factor is cut
        return cxc_lp_value(m, n), f"cycle multipacking carried to P_m x C_{n}, m>=23"
    if m <= VECTOR_MAX:
        return tables.row_coefficient(m) * n, f"row-vector multipacking f(m)*n carried to P_{m} x P_n"
    return (Fraction(2 * m * n, 13) + PXP_EDGE_COEFF * (m + n) - PXP_OFFSET,
            "stated multipacking bound for P_m x P_n with m,n >= 23")


def lower_bound(g: GridGraph) -> Bound:
    value, prov = lower_bound_value(g)
    return Bound(math.ceil(value), prov)


def p2_exact(n: int) -> int:
    return n // 2 + 1


@dataclass(frozen=True)
class BoundReport:
    graph: GridGraph
    lower: Bound
    upper: Bound
    exact: Optional[Bound] = None
    certificates: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.lower.value > self.upper.value:
            raise BoundConflict(
                f"{self.graph}: lower bound {self.lower.value} ({self.lower.provenance}) exceeds "
                f"upper bound {self.upper.value} ({self.upper.provenance})",
                self.lower,
                self.upper,
            )
        if self.exact is not None and not self.lower.value <= self.exact.value <= self.upper.value:
            raise AssertionError(f"exact {self.exact.value} outside [{self.lower.value}, {self.upper.value}]")

    @property
    def tight(self) -> bool:
        return self.lower.value == self.upper.value

    @property
    def gap(self) -> int:
        return self.upper.value - self.lower.value

    def summary(self) -> str:
        parts = [f"lower={self.lower.value}", f"upper={self.upper.value}"]
        if self.exact is not None:
            parts.append(f"exact={self.exact.value}")
        return " ".join(parts)


def exact_value(g: GridGraph, limits: SearchLimits) -> Bound:
    # the cyclic profile is quick only for very narrow strips; branch and bound does the rest
    if g.family is Family.PxP and g.m <= PROFILE_MAX_WIDTH:
        return Bound(exact_profile_dp(g.family, g.m, g.n, limits), "column profile dynamic program")
    if g.family is Family.PxC and g.m <= 3:
        return Bound(exact_profile_dp(g.family, g.m, g.n, limits), "cyclic column profile dynamic program")
    return Bound(exact_bnb(g, limits).value, "branch and bound")


BOUNDARY_MAX_ORDER = 400


def best_lower_bound(g: GridGraph) -> tuple[Bound, bool]:
    """lower_bound, raised by the boundary multipacking on small P_m x P_n when it helps.

    The flag says whether the boundary multipacking is feasible on ``g``.
    """
    h = canonical(g)
    lower = lower_bound(h)
    if h.family is not Family.PxP or h.order > BOUNDARY_MAX_ORDER:
        return lower, False
    w = boundary_multipacking(h)
    if not is_feasible_multipacking(w).feasible:
        return lower, False
    val = math.ceil(mp_cost(w))
    if val > lower.value:
        lower = Bound(val, "boundary multipacking of weight 1/3")
    return lower, True


def bound_report(g: GridGraph, want_exact: bool = False, limits: Optional[SearchLimits] = None) -> BoundReport:
    """Lower and upper bounds, optionally an exact value, with supporting constructions.

    Raises BudgetExceeded from the exact search when ``want_exact`` is set
    and the limits run out.
    """
    limits = limits or SearchLimits.from_env()
    h = canonical(g)
    lower, boundary_ok = best_lower_bound(h)
    upper = upper_bound(h)
    certs: list[str] = []
    exact = None

    if h.family is Family.PxP:
        if boundary_ok:
            certs.append("boundary_multipacking")
        if h.m == 2:
            exact = Bound(p2_exact(h.n), "closed form floor(n/2)+1 for P_2 x P_n")
        if h.m == 4:
            b = p4_tiling(h.n)
            assert b.cost <= upper.value
            certs.append("p4_tiling")
        if h.m >= LATTICE_MIN:
            choice = best_lattice_ell(h.m, h.n)
            certs.append(f"lattice(ell={choice.ell})")
        if h.m <= VECTOR_MAX:
            certs.append("row_vector_multipacking")
    elif h.family is Family.PxC:
        if h.m <= VECTOR_MAX or h.n >= 5:
            certs.append("row_vector_multipacking")
    else:
        certs.append("cxc_uniform_pair")

    if want_exact and exact is None:
        exact = exact_value(h, limits)
    return BoundReport(g, lower, upper, exact, tuple(certs))
