import itertools

import pytest

from conftest import adjacency, all_graphs, bfs
from gridcast import is_dominating, make_grid
from gridcast.constructions import p4_formula
from gridcast.errors import BudgetExceeded, TooLarge, UnsupportedWidth
from gridcast.exact import (
    UNLIMITED, SearchLimits, exact_bnb, exact_bruteforce, exact_profile_dp, profile_dp_values,
)


def product_oracle(g):
    """Minimum over all 3^(mn) strength vectors, distances from BFS."""
    vs = list(g.vertices())
    adj = adjacency(g)
    dist = [[bfs(adj, v)[u] for u in vs] for v in vs]
    best = None
    for strengths in itertools.product((0, 1, 2), repeat=len(vs)):
        c = sum(strengths)
        if best is not None and c >= best:
            continue
        if all(any(s and dist[i][j] <= s for i, s in enumerate(strengths)) for j in range(len(vs))):
            best = c
    return best


TINY = all_graphs(9)


@pytest.mark.parametrize("g", TINY, ids=lambda g: f"{g.family.value}-{g.m}x{g.n}")
def test_bruteforce_matches_product_oracle(g):
    assert exact_bruteforce(g) == product_oracle(g)


@pytest.mark.parametrize("fam,m,n,val", [("pxp", 2, 2, 2), ("cxc", 3, 3, 2), ("pxp", 3, 3, 2)])
def test_bruteforce_examples(fam, m, n, val):
    assert exact_bruteforce(make_grid(fam, m, n)) == val


def test_bruteforce_size_guard():
    with pytest.raises(TooLarge):
        exact_bruteforce(make_grid("pxp", 4, 5))


def test_bruteforce_budget():
    with pytest.raises(BudgetExceeded):
        exact_bruteforce(make_grid("pxp", 4, 4), SearchLimits(node_budget=5))


SMALL = all_graphs(16)


@pytest.mark.parametrize("g", SMALL, ids=lambda g: f"{g.family.value}-{g.m}x{g.n}")
def test_bnb_matches_bruteforce(g):
    res = exact_bnb(g, UNLIMITED)
    assert res.value == exact_bruteforce(g)
    assert res.proved_optimal
    assert is_dominating(res.certificate).dominating
    assert res.certificate.cost == res.value


@pytest.mark.parametrize("m,n,val", [(4, 6, 6), (4, 13, 12)])
def test_bnb_examples(m, n, val):
    res = exact_bnb(make_grid("pxp", m, n))
    assert res.value == val
    assert is_dominating(res.certificate).dominating and res.certificate.cost == val


def test_bnb_budget_returns_incumbent():
    with pytest.raises(BudgetExceeded) as exc:
        exact_bnb(make_grid("pxp", 7, 7), SearchLimits(node_budget=50))
    best = exc.value.best
    assert best is not None and not best.proved_optimal
    assert is_dominating(best.certificate).dominating
    assert best.certificate.cost == best.value >= exact_bnb(make_grid("pxp", 7, 7)).value


def test_bnb_deterministic():
    g = make_grid("pxc", 4, 7)
    a, b = exact_bnb(g), exact_bnb(g)
    assert a.certificate == b.certificate and a.nodes == b.nodes


@pytest.mark.parametrize("n,val", [(10, 9), (99, 80)])
def test_p4_profile_examples(n, val):
    assert exact_profile_dp("pxp", 4, n) == val


def test_p2_profile_example():
    assert exact_profile_dp("pxp", 2, 7) == 4


@pytest.mark.parametrize("n", range(4, 11))
def test_p4_profile_matches_bnb(n):
    assert exact_profile_dp("pxp", 4, n) == exact_bnb(make_grid("pxp", 4, n)).value


@pytest.mark.parametrize("m", range(2, 6))
def test_linear_profile_matches_bnb(m):
    vals = profile_dp_values(m, 30 // m)
    for n, v in vals.items():
        assert v == exact_bnb(make_grid("pxp", m, n)).value, (m, n)


CYCLIC = [(m, n) for m in (2, 3) for n in range(3, 13)] + [(4, n) for n in (3, 4, 5, 6)]


@pytest.mark.parametrize("m,n", CYCLIC)
def test_cyclic_profile_matches_bnb(m, n):
    assert exact_profile_dp("pxc", m, n) == exact_bnb(make_grid("pxc", m, n)).value


def test_p4_profile_matches_tiling_formula():
    vals = profile_dp_values(4, 99)
    assert all(vals[n] == p4_formula(n) for n in range(4, 100))


def test_profile_width_guard():
    with pytest.raises(UnsupportedWidth):
        exact_profile_dp("pxp", 6, 10)
    with pytest.raises(UnsupportedWidth):
        exact_profile_dp("cxc", 3, 10)


def test_limits_validation(monkeypatch):
    with pytest.raises(ValueError):
        SearchLimits(node_budget=0)
    monkeypatch.setenv("GRIDCAST_NODE_BUDGET", "1234")
    monkeypatch.setenv("GRIDCAST_TIME_BUDGET", "2.5")
    lim = SearchLimits.from_env()
    assert lim.node_budget == 1234 and lim.time_budget == 2.5
    assert SearchLimits.from_env(node_budget=7).node_budget == 7


def test_seeded_bnb_keeps_value():
    g = make_grid("pxp", 4, 8)
    first = exact_bnb(g)
    again = exact_bnb(g, seed=first.certificate)
    assert again.value == first.value
