"""Shared oracles built from first principles: explicit adjacency and BFS."""

import sys
from collections import deque

import pytest

from gridcast.grid import Family, Vertex, make_grid


def adjacency(g):
    """Neighbour lists built directly from the product definition."""
    adj = {}
    for v in g.vertices():
        out = []
        for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            r, c = v.row + dr, v.col + dc
            if g.rows_cyclic:
                r %= g.m
            if g.cols_cyclic:
                c %= g.n
            if 0 <= r < g.m and 0 <= c < g.n and (r, c) != tuple(v):
                u = Vertex(r, c)
                if u not in out:
                    out.append(u)
        adj[v] = out
    return adj


def bfs(adj, src):
    dist = {src: 0}
    todo = deque([src])
    while todo:
        v = todo.popleft()
        for u in adj[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                todo.append(u)
    return dist


def all_graphs(max_order, min_dim=None):
    """Every in-scope graph with m*n <= max_order, all three families."""
    minima = {Family.PxP: (2, 2), Family.PxC: (2, 3), Family.CxC: (3, 3)}
    out = []
    for fam, (m0, n0) in minima.items():
        for m in range(m0, max_order + 1):
            for n in range(n0, max_order // m + 1):
                out.append(make_grid(fam, m, n))
    return out


def naive_dominating(g, strength):
    """Double loop over (hearer, broadcaster) pairs using BFS distances."""
    adj = adjacency(g)
    dist = {v: bfs(adj, v) for v in g.vertices()}
    for u in g.vertices():
        if not any(s and dist[v][u] <= s for v, s in strength.items()):
            return False
    return True


@pytest.fixture
def grid():
    return make_grid


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
