"""Constructive certificates.

* the P_4 x P_n tile engine,
* the mod-13 lattice broadcast on P_m x P_n for m, n >= 13,
* fractional multipackings (and matching fractional broadcasts) for the
  three families.

Everything returned here is re-checkable with the predicates in
:mod:`gridcast.broadcast` and :mod:`gridcast.multipack`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import tables
from .broadcast import Broadcast
from .errors import DimensionsTooSmall, InfeasibleOnPath, OutOfRangeDimensions
from .grid import Family, GridGraph, Vertex, make_grid
from .multipack import FractionalWeighting, WeightKind, is_feasible_multipacking

P4_ROWS = 4
LATTICE_MOD = 13


# ------------------------------------------------------------------ P_4 tiles

@dataclass(frozen=True)
class Tile:
    name: str
    width: int
    broadcasters: tuple[tuple[int, int, int], ...]  # (row, col, strength) inside the tile

    def __post_init__(self):
        for r, c, s in self.broadcasters:
            if not (0 <= r < P4_ROWS and 0 <= c < self.width and s in (1, 2)):
                raise ValueError(f"tile {self.name}: bad broadcaster {(r, c, s)}")

    @property
    def cost(self) -> int:
        return sum(s for _, _, s in self.broadcasters)

    def placed(self, hflip: bool, vflip: bool) -> list[tuple[int, int, int]]:
        """Broadcasters after flipping: hflip mirrors rows, vflip mirrors columns."""
        out = []
        for r, c, s in self.broadcasters:
            if hflip:
                r = P4_ROWS - 1 - r
            if vflip:
                c = self.width - 1 - c
            out.append((r, c, s))
        return out


class Placement(NamedTuple):
    name: str
    hflip: bool
    vflip: bool

    def __str__(self) -> str:
        return ("~" if self.hflip else "") + self.name + ("|" if self.vflip else "")


_TOKEN = re.compile(r"^(~?)(B\d?)(\|?)$")


def parse_placement(token: str) -> Placement:
    """'~B1|' -> B1 mirrored top-to-bottom and left-to-right."""
    hit = _TOKEN.match(token)
    if not hit:
        raise ValueError(f"bad tile token {token!r}")
    return Placement(hit.group(2), bool(hit.group(1)), bool(hit.group(3)))


def p4_tiles() -> dict[str, Tile]:
    data = tables.load("p4_tiles.json")
    return {
        name: Tile(name, entry["width"], tuple(tuple(b) for b in entry["broadcasters"]))
        for name, entry in data.items()
        if name.startswith("B")
    }


@dataclass(frozen=True)
class TileSequence:
    placements: tuple[Placement, ...]

    def width(self, tiles: dict[str, Tile] | None = None) -> int:
        tiles = tiles or p4_tiles()
        return sum(tiles[p.name].width for p in self.placements)

    def __str__(self) -> str:
        return " ".join(str(p) for p in self.placements)


def p4_sequence(n: int) -> TileSequence:
    if n < 4:
        raise OutOfRangeDimensions(f"the P_4 tiling needs n >= 4, got {n}")
    data = tables.load("p4_tiles.json")
    row = data["sequences"][str(n % 10)]
    reps, rem = divmod(n - row["offset"], 10)
    assert rem == 0 and reps >= 0, (n, row)
    tokens = row["prefix"] + data["repeat"] * reps + row["suffix"]
    seq = TileSequence(tuple(parse_placement(t) for t in tokens))
    if seq.width() != n:
        raise AssertionError(f"tile widths sum to {seq.width()} for n={n}")
    return seq


def assemble(seq: TileSequence, tiles: dict[str, Tile] | None = None) -> Broadcast:
    """Place tiles left to right on P_4 x P_width."""
    tiles = tiles or p4_tiles()
    g = make_grid(Family.PxP, P4_ROWS, seq.width(tiles))
    triples, offset = [], 0
    for p in seq.placements:
        tile = tiles[p.name]
        for r, c, s in tile.placed(p.hflip, p.vflip):
            triples.append((r, offset + c, s))
        offset += tile.width
    return Broadcast.from_triples(g, triples)


def p4_tiling(n: int) -> Broadcast:
    return assemble(p4_sequence(n))


def p4_formula(n: int) -> int:
    """8 floor(n/10) + d(n mod 10)."""
    d = tables.load("strip_formulas.json")["p4_remainder_cost"]
    return 8 * (n // 10) + d[n % 10]


# ----------------------------------------------------------------- lattice

def lattice_phi(col: int, row: int) -> int:
    """Class of (col, row) in Z_13; the first argument is the horizontal coordinate."""
    return (3 * col + 2 * row) % LATTICE_MOD


def _check_lattice_dims(m: int, n: int) -> None:
    if m < LATTICE_MOD or n < LATTICE_MOD:
        raise DimensionsTooSmall(f"the lattice construction needs m, n >= 13, got {m}x{n}")


def _check_ell(ell: int) -> int:
    if not 0 <= int(ell) < LATTICE_MOD:
        raise ValueError(f"lattice class must lie in 0..12, got {ell!r}")
    return int(ell)


def lattice_points(m: int, n: int, ell: int, margin: int = 2):
    """(col, row) with phi = ell on the grid padded by ``margin`` on every side."""
    for row in range(-margin, m + margin):
        # 3*col = ell - 2*row (mod 13); 9 is the inverse of 3 mod 13
        first = (9 * (ell - 2 * row)) % LATTICE_MOD
        start = -margin + ((first + margin) % LATTICE_MOD)
        for col in range(start, n + margin, LATTICE_MOD):
            yield col, row


def lattice_broadcast(m: int, n: int, ell: int) -> Broadcast:
    """Lattice class ell at strength 2 inside the grid, exterior members pulled in at strength 1.

    An exterior lattice point within distance 2 of the grid is replaced by
    its nearest grid vertex, broadcasting at strength 1.  Exterior points
    farther out hear nothing in the grid and are dropped.
    """
    _check_lattice_dims(m, n)
    ell = _check_ell(ell)
    g = make_grid(Family.PxP, m, n)
    strength: dict[Vertex, int] = {}
    for col, row in lattice_points(m, n, ell):
        if 0 <= col < n and 0 <= row < m:
            strength[Vertex(row, col)] = 2
            continue
        near = Vertex(min(max(row, 0), m - 1), min(max(col, 0), n - 1))
        gap = abs(near.row - row) + abs(near.col - col)
        if gap > 2:
            continue
        # the clamp is the unique closest grid vertex for a point outside a box
        others = [
            v for v in (Vertex(near.row + dr, near.col + dc) for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1)))
            if v in g and abs(v.row - row) + abs(v.col - col) <= gap
        ]
        assert not others, f"nearest grid vertex to {(col, row)} is not unique"
        strength[near] = max(strength.get(near, 0), 1)
    return Broadcast(g, strength)


def lattice_class_counts(m: int, n: int, ell: int) -> tuple[int, int]:
    """(|phi^-1(ell) in G|, |phi^-1(ell) in Y|) where Y pads G by 2 on each side."""
    inside = sum(1 for c, r in lattice_points(m, n, ell, margin=0))
    padded = sum(1 for _ in lattice_points(m, n, ell, margin=2))
    return inside, padded


def corner_sum(m: int, n: int, ell: int) -> int:
    """Lattice members in the leftover corner blocks of G and of the padded grid Y.

    G_3 is the block of the last n mod 13 columns and last m mod 13 rows of G;
    Y_3 is the same for the (m+4) x (n+4) padded grid.
    """
    ell = _check_ell(ell)
    m13, n13 = m % 13, n % 13
    my, ny = (m + 4) % 13, (n + 4) % 13
    total = 0
    for i in range(n - n13, n):
        for j in range(m - m13, m):
            total += lattice_phi(i, j) == ell
    for i in range(n + 2 - ny, n + 2):
        for j in range(m + 2 - my, m + 2):
            total += lattice_phi(i, j) == ell
    return total


class LatticeChoice(NamedTuple):
    ell: int
    corner_sum: int


def best_lattice_ell(m: int, n: int) -> LatticeChoice:
    """Class minimising the corner sum; ties go to the largest class."""
    _check_lattice_dims(m, n)
    sums = [(corner_sum(m, n, ell), -ell) for ell in range(LATTICE_MOD)]
    best, neg = min(sums)
    return LatticeChoice(-neg, best)


def lattice_hearing_counts(m: int, n: int, ell: int) -> dict[Vertex, int]:
    """For each grid vertex, how many padded-lattice members lie within distance 2."""
    counts = {Vertex(r, c): 0 for r in range(m) for c in range(n)}
    for col, row in lattice_points(m, n, ell):
        for dr in range(-2, 3):
            for dc in range(-2 + abs(dr), 3 - abs(dr)):
                v = Vertex(row + dr, col + dc)
                if v in counts:
                    counts[v] += 1
    return counts


# ----------------------------------------------------------- multipackings

class LpPair(NamedTuple):
    mp: FractionalWeighting
    fb: FractionalWeighting


def cxc_lp_weights(m: int, n: int) -> tuple[Fraction, Fraction, int]:
    """(multipacking weight, broadcast weight, broadcast strength) for uniform C_m x C_n."""
    a, b = sorted((m, n))
    if a >= 5:
        return Fraction(2, 13), Fraction(1, 13), 2
    if a == 4 and b >= 5:
        return Fraction(1, 6), Fraction(1, 12), 2
    if a == 3 and b >= 5:
        return Fraction(2, 11), Fraction(1, 11), 2
    if a == b == 4:
        return Fraction(2, 11), Fraction(1, 11), 2
    # 3x3 and 3x4
    return Fraction(1, 5), Fraction(1, 5), 1


def cxc_multipacking_pair(m: int, n: int) -> LpPair:
    """Uniform multipacking and uniform fractional broadcast of equal cost on C_m x C_n."""
    g = make_grid(Family.CxC, m, n)
    y, x, s = cxc_lp_weights(m, n)
    kind = WeightKind.FractionalBroadcastStrength2 if s == 2 else WeightKind.FractionalBroadcastStrength1
    return LpPair(FractionalWeighting.uniform(g, y), FractionalWeighting.uniform(g, x, kind))


def pxc_row_vector(m: int) -> list[Fraction]:
    if m < 2:
        raise OutOfRangeDimensions(f"row vectors start at m = 2, got {m}")
    return tables.row_vector(m) if m <= 22 else tables.long_path_vector(m)


def pxc_vector_multipacking(m: int, n: int) -> FractionalWeighting:
    """Every vertex in row i gets the i-th entry of the row vector for P_m."""
    g = make_grid(Family.PxC, m, n)
    return FractionalWeighting.from_rows(g, pxc_row_vector(m))


def pxp_multipacking_from_vector(m: int, n: int) -> FractionalWeighting:
    """Same row vector on P_m x P_n; feasibility is checked, not assumed."""
    if not 2 <= m <= 22:
        raise OutOfRangeDimensions(f"path row vectors are tabulated for 2 <= m <= 22, got {m}")
    g = make_grid(Family.PxP, m, n)
    w = FractionalWeighting.from_rows(g, tables.row_vector(m))
    check = is_feasible_multipacking(w)
    if not check.feasible:
        v, r = check.witness
        raise InfeasibleOnPath(
            f"row vector for m={m} breaks the radius-{r} constraint at {tuple(v)} on P_{m} x P_{n}",
            check.witness,
        )
    return w


def boundary_multipacking(g: GridGraph) -> FractionalWeighting:
    """Weight 1/3 on every vertex of the outer boundary of a P_m x P_n grid.

    Feasible for m, n >= 4 except 4 x 4, where a radius-2 ball holds seven
    boundary vertices; callers re-check before relying on it.
    """
    if g.family is not Family.PxP:
        raise ValueError("the boundary multipacking is defined on P_m x P_n only")
    third = Fraction(1, 3)
    w = {v: third for v in g.vertices() if v.row in (0, g.m - 1) or v.col in (0, g.n - 1)}
    return FractionalWeighting(g, w)
