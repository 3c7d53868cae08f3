"""Grid graphs P_m x P_n, P_m x C_n and C_m x C_n with closed-form metrics.

Rows are indexed by the first factor (length ``m``), columns by the second
(length ``n``).  For ``PxC`` the rows form the path and the columns the cycle;
the orientation is never swapped.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterator, NamedTuple

from .errors import OutOfRangeDimensions, RadiusUnsupported, VertexOutOfRange


class Family(str, Enum):
    PxP = "pxp"
    PxC = "pxc"
    CxC = "cxc"

    @classmethod
    def parse(cls, value: "Family | str") -> "Family":
        if isinstance(value, Family):
            return value
        key = str(value).strip().lower().replace("_", "")
        for fam in cls:
            if key in (fam.value, fam.name.lower()):
                return fam
        raise ValueError(f"unknown graph family {value!r}")


# minimum (m, n) per family
_MINIMA = {Family.PxP: (2, 2), Family.PxC: (2, 3), Family.CxC: (3, 3)}


class Vertex(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class GridGraph:
    family: Family
    m: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        lo_m, lo_n = _MINIMA[self.family]
        if not (isinstance(self.m, int) and isinstance(self.n, int)):
            raise OutOfRangeDimensions(f"dimensions must be integers, got {self.m!r}, {self.n!r}")
        if self.m < lo_m or self.n < lo_n:
            raise OutOfRangeDimensions(
                f"{self.family.value} needs m >= {lo_m} and n >= {lo_n}, got {self.m}x{self.n}"
            )

    @property
    def rows_cyclic(self) -> bool:
        return self.family is Family.CxC

    @property
    def cols_cyclic(self) -> bool:
        return self.family is not Family.PxP

    @property
    def order(self) -> int:
        return self.m * self.n

    def __len__(self) -> int:
        return self.m * self.n

    def __contains__(self, v) -> bool:
        try:
            r, c = v
        except (TypeError, ValueError):
            return False
        return 0 <= r < self.m and 0 <= c < self.n

    def vertices(self) -> Iterator[Vertex]:
        """Row-major iteration."""
        for r in range(self.m):
            for c in range(self.n):
                yield Vertex(r, c)

    def index(self, v) -> int:
        self.check(v)
        return v[0] * self.n + v[1]

    def vertex(self, idx: int) -> Vertex:
        return Vertex(*divmod(idx, self.n))

    def check(self, v) -> None:
        if v not in self:
            raise VertexOutOfRange(f"{v!r} is not a vertex of {self}")

    def distance(self, u, v) -> int:
        return distance(self, u, v)

    def ball(self, v, r: int) -> frozenset[Vertex]:
        return ball(self, v, r)

    @cached_property
    def ball_indices(self) -> dict[int, tuple[tuple[int, ...], ...]]:
        """``ball_indices[r][i]``: sorted vertex indices within distance r of vertex i."""
        out = {}
        for r in (1, 2):
            out[r] = tuple(
                tuple(sorted(self.index(u) for u in ball(self, v, r))) for v in self.vertices()
            )
        return out

    @cached_property
    def ball_masks(self) -> dict[int, tuple[int, ...]]:
        """Balls as bitmasks over vertex indices."""
        out = {}
        for r, balls in self.ball_indices.items():
            masks = []
            for members in balls:
                mask = 0
                for i in members:
                    mask |= 1 << i
                masks.append(mask)
            out[r] = tuple(masks)
        return out

    def __str__(self) -> str:
        a = "C" if self.rows_cyclic else "P"
        b = "C" if self.cols_cyclic else "P"
        return f"{a}_{self.m} x {b}_{self.n}"


def make_grid(family, m: int, n: int) -> GridGraph:
    return GridGraph(Family.parse(family), m, n)


def _axis_distance(a: int, b: int, length: int, cyclic: bool) -> int:
    d = abs(a - b)
    return min(d, length - d) if cyclic else d


def distance(g: GridGraph, u, v) -> int:
    g.check(u)
    g.check(v)
    return _axis_distance(u[0], v[0], g.m, g.rows_cyclic) + _axis_distance(u[1], v[1], g.n, g.cols_cyclic)


def _axis_offsets(center: int, length: int, cyclic: bool, reach: int) -> dict[int, int]:
    """Map coordinate -> axis distance for coordinates within ``reach`` of center."""
    out: dict[int, int] = {}
    for d in range(-reach, reach + 1):
        x = center + d
        if cyclic:
            x %= length
        elif not 0 <= x < length:
            continue
        dist = _axis_distance(center, x, length, cyclic)
        if dist <= reach:
            out[x] = dist
    return out


def ball(g: GridGraph, v, r: int) -> frozenset[Vertex]:
    if r not in (1, 2):
        raise RadiusUnsupported(f"only radii 1 and 2 are supported, got {r!r}")
    g.check(v)
    rows = _axis_offsets(v[0], g.m, g.rows_cyclic, r)
    cols = _axis_offsets(v[1], g.n, g.cols_cyclic, r)
    return frozenset(
        Vertex(x, y) for x, dx in rows.items() for y, dy in cols.items() if dx + dy <= r
    )


def radius(g: GridGraph) -> int:
    # eccentricities add across a Cartesian product; P_k and C_k both have radius floor(k/2)
    return g.m // 2 + g.n // 2
