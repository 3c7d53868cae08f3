from fractions import Fraction

import pytest

from gridcast import is_dominating, is_feasible_fractional_broadcast, is_feasible_multipacking, make_grid, mp_cost
from gridcast.bounds import lattice_formula
from gridcast.constructions import (
    Placement, Tile, best_lattice_ell, boundary_multipacking, corner_sum, cxc_multipacking_pair,
    lattice_broadcast, lattice_class_counts, lattice_hearing_counts, lattice_phi, lattice_points,
    p4_formula, p4_sequence, p4_tiles, p4_tiling, parse_placement, pxc_row_vector,
    pxc_vector_multipacking, pxp_multipacking_from_vector,
)
from gridcast.errors import DimensionsTooSmall, OutOfRangeDimensions
from gridcast import tables

F = Fraction


# ------------------------------------------------------------------ tiles

def test_tile_inventory():
    tiles = p4_tiles()
    assert sorted(tiles) == ["B", "B1", "B2", "B3", "B4", "B5"]
    for t in tiles.values():
        assert all(0 <= r < 4 and 0 <= c < t.width and s in (1, 2) for r, c, s in t.broadcasters)


def test_tile_rejects_bad_broadcaster():
    with pytest.raises(ValueError):
        Tile("X", 2, ((4, 0, 1),))


@pytest.mark.parametrize("token,expected", [
    ("B", Placement("B", False, False)),
    ("~B3", Placement("B3", True, False)),
    ("B4|", Placement("B4", False, True)),
    ("~B1|", Placement("B1", True, True)),
])
def test_parse_placement(token, expected):
    assert parse_placement(token) == expected
    assert str(expected) == token


def test_flips_are_involutions():
    for t in p4_tiles().values():
        once = Tile(t.name, t.width, tuple(t.placed(True, True)))
        assert sorted(once.placed(True, True)) == sorted(t.broadcasters)


@pytest.mark.parametrize("n,seq,c", [(6, "B1 ~B3", 6), (14, "B1 B ~B ~B1|", 12), (10, "B1 B B4", 9)])
def test_sequence_examples(n, seq, c):
    assert str(p4_sequence(n)) == seq
    b = p4_tiling(n)
    assert b.cost == c and is_dominating(b).dominating


def test_tiling_sweep():
    for n in range(4, 105):
        b = p4_tiling(n)
        assert b.graph.n == n
        assert is_dominating(b).dominating, n
        assert b.cost == p4_formula(n), n


def test_tiling_needs_n_at_least_4():
    with pytest.raises(OutOfRangeDimensions):
        p4_tiling(3)


# ---------------------------------------------------------------- lattice

@pytest.mark.parametrize("col,row,cls", [(2, 1, 8), (0, 0, 0), (13, 13, 0)])
def test_lattice_phi(col, row, cls):
    assert lattice_phi(col, row) == cls


def test_lattice_points_are_the_class():
    for ell in range(13):
        pts = list(lattice_points(15, 17, ell))
        assert all(lattice_phi(c, r) == ell for c, r in pts)
        brute = [(c, r) for r in range(-2, 17) for c in range(-2, 19) if lattice_phi(c, r) == ell]
        assert sorted(pts) == sorted(brute)


def test_13x13_examples():
    b8 = lattice_broadcast(13, 13, 8)
    assert is_dominating(b8).dominating and b8.cost == 35
    b4 = lattice_broadcast(13, 13, 4)
    assert is_dominating(b4).dominating and b4.cost <= 34
    assert best_lattice_ell(13, 13) == (4, 0)
    assert best_lattice_ell(14, 14) == (12, 2)


def test_class_count_on_multiple_of_13():
    # a 14 x 13 block holds exactly 14 members of each class
    for ell in range(13):
        assert sum(lattice_phi(c, r) == ell for r in range(14) for c in range(13)) == 14
    for ell in range(13):
        inside, padded = lattice_class_counts(13, 13, ell)
        # 13 x 13 is exact; the 17 x 17 padding holds 289/13 members up to edge effects
        assert inside == 13 and 21 <= padded <= 23


def test_lattice_dimension_guard():
    with pytest.raises(DimensionsTooSmall):
        lattice_broadcast(12, 20, 0)
    with pytest.raises(DimensionsTooSmall):
        best_lattice_ell(13, 12)
    with pytest.raises(ValueError):
        lattice_broadcast(13, 13, 13)


@pytest.mark.parametrize("m", range(13, 27))
def test_lattice_uniqueness(m):
    for n in range(13, 27):
        for ell in range(13):
            counts = lattice_hearing_counts(m, n, ell)
            assert set(counts.values()) == {1}, (m, n, ell)


@pytest.mark.parametrize("m", range(13, 40))
def test_lattice_cost_below_formula(m):
    for n in range(13, 40):
        value = lattice_formula(m, n)
        assert value.denominator == 1
        b = lattice_broadcast(m, n, best_lattice_ell(m, n).ell)
        assert is_dominating(b).dominating
        assert b.cost <= value


def test_lattice_cost_matches_class_counts():
    # every in-grid member costs 2; each exterior member that reaches the grid costs 1
    for m, n in [(13, 13), (14, 17), (20, 26)]:
        for ell in range(13):
            inside, padded = lattice_class_counts(m, n, ell)
            assert lattice_broadcast(m, n, ell).cost <= inside + padded


def test_corner_sums_match_table():
    grid = tables.load("constant_tables.json")["pxp_lattice_corner"]["grid"]
    for i in range(13):
        for j in range(13):
            assert best_lattice_ell(13 + i, 13 + j).corner_sum == grid[i][j], (i, j)
            assert corner_sum(13 + i, 13 + j, best_lattice_ell(13 + i, 13 + j).ell) == grid[i][j]


def test_ell_choices_match_table_transposed():
    # the embedded class table is indexed the other way round from the corner-sum table
    grid = tables.load("constant_tables.json")["pxp_lattice_ell"]["grid"]
    hits = sum(best_lattice_ell(13 + i, 13 + j).ell == grid[j][i] for i in range(13) for j in range(13))
    assert hits == 169


def test_best_ell_is_a_true_minimum():
    for m, n in [(13, 13), (15, 22), (25, 14)]:
        choice = best_lattice_ell(m, n)
        sums = [corner_sum(m, n, ell) for ell in range(13)]
        assert choice.corner_sum == min(sums)
        assert choice.ell == max(e for e in range(13) if sums[e] == min(sums))


# ----------------------------------------------------------- multipackings

def cxc_lp_closed_form(m, n):
    a, b = sorted((m, n))
    if a >= 5:
        return F(2 * m * n, 13)
    if a == 4 and b >= 5:
        return F(4 * b, 6)
    if a == 3 and b >= 5:
        return F(6 * b, 11)
    return {(4, 4): F(32, 11), (3, 4): F(12, 5), (3, 3): F(9, 5)}[(a, b)]


@pytest.mark.parametrize("m,n,val", [(5, 5, F(50, 13)), (4, 3, F(12, 5)), (3, 3, F(9, 5)), (4, 4, F(32, 11))])
def test_cxc_pair_examples(m, n, val):
    pair = cxc_multipacking_pair(m, n)
    assert mp_cost(pair.mp) == mp_cost(pair.fb) == val


@pytest.mark.parametrize("m", range(3, 13))
def test_cxc_pair_sweep(m):
    for n in range(3, 13):
        pair = cxc_multipacking_pair(m, n)
        assert is_feasible_multipacking(pair.mp).feasible
        assert is_feasible_fractional_broadcast(pair.fb).feasible
        assert mp_cost(pair.mp) == mp_cost(pair.fb) == cxc_lp_closed_form(m, n)


def test_row_vector_examples():
    assert pxc_row_vector(3) == [F(1, 3), 0, F(1, 3)]
    for n in (5, 13):
        assert mp_cost(pxc_vector_multipacking(3, n)) == F(2 * n, 3)
        assert mp_cost(pxc_vector_multipacking(8, n)) == F(212 * n, 149)
        assert mp_cost(pxc_vector_multipacking(23, n)) == F(2 * 23 * n, 13) + F(2620 * n, 13767)


@pytest.mark.parametrize("m", list(range(2, 23)) + [23, 24, 30, 41])
def test_row_vectors_feasible_and_symmetric(m):
    v = pxc_row_vector(m)
    assert len(v) == m and v == v[::-1]
    for n in (3, 4, 5, 13):
        assert is_feasible_multipacking(pxc_vector_multipacking(m, n)).feasible


def test_long_path_vector_total():
    # the fixed ends weigh 36508/13767 in total, the plateau 2/13 per row
    for m in (23, 30, 50):
        assert sum(pxc_row_vector(m)) == (m - 16) * F(2, 13) + F(36508, 13767)


@pytest.mark.parametrize("m", range(2, 23))
def test_row_vectors_on_paths(m):
    for n in (2, 3, 5, 9, 14):
        w = pxp_multipacking_from_vector(m, n)
        assert is_feasible_multipacking(w).feasible


def test_path_vector_examples():
    assert mp_cost(pxp_multipacking_from_vector(3, 9)) == 6
    assert mp_cost(pxp_multipacking_from_vector(2, 8)) == 4
    with pytest.raises(OutOfRangeDimensions):
        pxp_multipacking_from_vector(23, 5)


def test_boundary_multipacking():
    w = boundary_multipacking(make_grid("pxp", 4, 6))
    assert mp_cost(w) == F(16, 3) and is_feasible_multipacking(w).feasible
    for m in range(4, 12):
        for n in range(m, 12):
            ok = is_feasible_multipacking(boundary_multipacking(make_grid("pxp", m, n)))
            # on 4 x 4 the radius-2 ball at (1, 1) holds seven boundary vertices
            assert ok.feasible == ((m, n) != (4, 4))
    with pytest.raises(ValueError):
        boundary_multipacking(make_grid("cxc", 4, 4))
