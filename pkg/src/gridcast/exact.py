"""Exact gamma_{b,2} at desk scale: brute force, branch and bound, profile DP.

All three are independent of the bound formulas and of each other, so they
serve as oracles for one another in the test suite.
"""

from __future__ import annotations

import functools
import itertools
import os
import sys
import time
from dataclasses import dataclass
from typing import Optional

from .broadcast import Broadcast, is_dominating
from .errors import BudgetExceeded, TooLarge, UnsupportedWidth
from .grid import Family, GridGraph, make_grid

BRUTEFORCE_MAX_ORDER = 16
PROFILE_MAX_WIDTH = 5


@dataclass(frozen=True)
class SearchLimits:
    max_cost: Optional[int] = None
    node_budget: Optional[int] = 20_000_000
    time_budget: Optional[float] = 600.0

    def __post_init__(self):
        for name in ("max_cost", "node_budget", "time_budget"):
            val = getattr(self, name)
            if val is not None and val <= 0:
                raise ValueError(f"{name} must be positive, got {val!r}")

    @classmethod
    def from_env(cls, **overrides) -> "SearchLimits":
        """Defaults, then GRIDCAST_NODE_BUDGET / GRIDCAST_TIME_BUDGET, then overrides."""
        kw = {}
        if os.environ.get("GRIDCAST_NODE_BUDGET"):
            kw["node_budget"] = int(os.environ["GRIDCAST_NODE_BUDGET"])
        if os.environ.get("GRIDCAST_TIME_BUDGET"):
            kw["time_budget"] = float(os.environ["GRIDCAST_TIME_BUDGET"])
        kw.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kw)


UNLIMITED = SearchLimits(node_budget=None, time_budget=None)


@dataclass(frozen=True)
class ExactResult:
    value: int
    certificate: Broadcast
    proved_optimal: bool
    nodes: int


class _Clock:
    """Node and wall-clock accounting shared by the searches."""

    def __init__(self, limits: SearchLimits):
        self.limits = limits
        self.nodes = 0
        self.start = time.monotonic()

    def tick(self) -> bool:
        """Count a node; True when a budget is exhausted."""
        self.nodes += 1
        lim = self.limits
        if lim.node_budget is not None and self.nodes > lim.node_budget:
            return True
        if lim.time_budget is not None and not self.nodes & 1023:
            return time.monotonic() - self.start > lim.time_budget
        return False


# ---------------------------------------------------------------- brute force

def exact_bruteforce(g: GridGraph, limits: SearchLimits = UNLIMITED) -> int:
    """Minimum cost over all strength assignments, enumerated by increasing cost.

    Every assignment of cost c is a choice of a strength-2 set and a disjoint
    strength-1 set with 2|S2| + |S1| = c, so walking c upward and stopping at
    the first dominating one is the same as minimising over all 3^(mn).
    """
    if g.order > BRUTEFORCE_MAX_ORDER:
        raise TooLarge(f"brute force is limited to mn <= {BRUTEFORCE_MAX_ORDER}, got {g.order}")
    clock = _Clock(limits)
    full = (1 << g.order) - 1
    m1, m2 = g.ball_masks[1], g.ball_masks[2]
    idx = range(g.order)
    cap = limits.max_cost if limits.max_cost is not None else 2 * g.order
    for c in range(cap + 1):
        for twos in range(c // 2 + 1):
            ones = c - 2 * twos
            if twos + ones > g.order:
                continue
            for s2 in itertools.combinations(idx, twos):
                cov2 = 0
                for v in s2:
                    cov2 |= m2[v]
                rest = [v for v in idx if v not in s2]
                for s1 in itertools.combinations(rest, ones):
                    if clock.tick():
                        raise BudgetExceeded(f"brute force budget exhausted at cost {c}")
                    cov = cov2
                    for v in s1:
                        cov |= m1[v]
                    if cov == full:
                        return c
    raise BudgetExceeded(f"no dominating broadcast of cost <= {cap}")


# ---------------------------------------------------------- branch and bound

def _sweep_order(g: GridGraph) -> list[int]:
    """Vertex indices ordered along the longer side so the frontier stays narrow."""
    if g.n >= g.m:
        return [r * g.n + c for c in range(g.n) for r in range(g.m)]
    return [r * g.n + c for r in range(g.m) for c in range(g.n)]


def _greedy(g: GridGraph, cover: list[tuple[int, int, int]], full: int) -> list[tuple[int, int]]:
    """Best coverage-per-cost greedy; returns (vertex index, strength) picks in rank space."""
    unheard, picks = full, []
    while unheard:
        best = max(cover, key=lambda o: ((o[2] & unheard).bit_count() / o[1], -o[0], o[1]))
        picks.append((best[0], best[1]))
        unheard &= ~best[2]
    return picks


def _counting_bound(order: int, c1: int, c2: int) -> list[int]:
    """lb[u] = min a + 2b subject to c1*a + c2*b >= u: cheapest way to hear u vertices."""
    out = []
    for u in range(order + 1):
        best = u  # all strength 1 is never worse than this
        for b in range(u // c2 + 2):
            left = max(0, u - c2 * b)
            best = min(best, 2 * b + -(-left // c1))
        out.append(best)
    return out


def exact_bnb(
    g: GridGraph,
    limits: SearchLimits = SearchLimits(),
    seed: Optional[Broadcast] = None,
) -> ExactResult:
    """Depth-first branch and bound over covering choices.

    Branches on the first unheard vertex of the sweep order, trying every
    (broadcaster, strength) that reaches it.  Options whose new coverage is a
    subset of another option of no greater cost are skipped.  A transposition
    table keyed on the unheard set cuts repeated subproblems.  Raises
    BudgetExceeded carrying the incumbent (proved_optimal False) when a budget
    runs out.
    """
    order = _sweep_order(g)
    rank = {v: k for k, v in enumerate(order)}
    N = g.order
    full = (1 << N) - 1

    def to_rank(mask: int) -> int:
        out = 0
        while mask:
            low = mask & -mask
            out |= 1 << rank[low.bit_length() - 1]
            mask ^= low
        return out

    cov = {s: [to_rank(mk) for mk in g.ball_masks[s]] for s in (1, 2)}
    # options[k]: (vertex rank, strength, coverage) for broadcasts heard at rank k
    options: list[list[tuple[int, int, int]]] = []
    for k, j in enumerate(order):
        opts = []
        for s in (2, 1):
            for i in g.ball_indices[s][j]:
                d = g.distance(g.vertex(i), g.vertex(j))
                opts.append((d, rank[i], s, cov[s][i]))
        opts.sort(key=lambda o: (-o[2], o[0], o[1]))
        options.append([(r, s, c) for _, r, s, c in opts])

    c1 = max(mk.bit_count() for mk in cov[1])
    c2 = max(mk.bit_count() for mk in cov[2])
    lb = _counting_bound(N, c1, c2)

    all_opts = [(rank[i], s, cov[s][i]) for s in (2, 1) for i in range(N)]
    picks = _greedy(g, all_opts, full)
    best_cost = sum(s for _, s in picks)
    best_picks = picks
    if seed is not None:
        if seed.graph != g or not is_dominating(seed):
            raise ValueError("seed must be a dominating broadcast on the same graph")
        if seed.cost < best_cost:
            best_cost = seed.cost
            best_picks = [(rank[g.index(v)], s) for v, s in seed.strength.items()]
    if limits.max_cost is not None and best_cost > limits.max_cost:
        best_cost = limits.max_cost + 1  # only look for solutions within the cap
        best_picks = None

    clock = _Clock(limits)
    seen: dict[int, int] = {}
    stack: list[tuple[int, int]] = []
    exhausted = False

    def dfs(unheard: int, spent: int) -> None:
        nonlocal best_cost, best_picks, exhausted
        if exhausted:
            return
        if not unheard:
            if spent < best_cost:
                best_cost = spent
                best_picks = list(stack)
            return
        if spent + lb[unheard.bit_count()] >= best_cost:
            return
        prev = seen.get(unheard)
        if prev is not None and prev <= spent:
            return
        seen[unheard] = spent
        if clock.tick():
            exhausted = True
            return
        k = (unheard & -unheard).bit_length() - 1
        gains = []
        for r, s, c in options[k]:
            gains.append((r, s, c & unheard))
        for a, (r, s, gain) in enumerate(gains):
            # skip options whose fresh coverage another no-dearer option already contains
            dominated = False
            for b, (_, s2, gain2) in enumerate(gains):
                if b == a or s2 > s or gain & ~gain2:
                    continue
                if gain2 != gain or s2 < s or b < a:
                    dominated = True
                    break
            if dominated:
                continue
            stack.append((r, s))
            dfs(unheard & ~gain, spent + s)
            stack.pop()
            if exhausted:
                return

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * N + 100))
    try:
        dfs(full, 0)
    finally:
        sys.setrecursionlimit(old)

    cert = None
    if best_picks is not None:
        cert = Broadcast.from_triples(g, ((*g.vertex(order[r]), s) for r, s in best_picks))
        assert is_dominating(cert).dominating and cert.cost == best_cost
    if exhausted:
        partial = None if cert is None else ExactResult(cert.cost, cert, False, clock.nodes)
        raise BudgetExceeded(f"branch and bound budget exhausted after {clock.nodes} nodes", partial)
    if cert is None:
        raise BudgetExceeded(f"no dominating broadcast of cost <= {limits.max_cost}")
    return ExactResult(best_cost, cert, True, clock.nodes)


# ------------------------------------------------------------- profile DP

@functools.lru_cache(maxsize=None)
def _column_coverage(m: int) -> list[tuple[int, list[int]]]:
    """(cost, coverage masks for column offsets -2..2) of every useful column assignment."""
    out = []
    for a in itertools.product((0, 1, 2), repeat=m):
        masks = []
        for delta in range(-2, 3):
            mask = 0
            for r, s in enumerate(a):
                reach = s - abs(delta)
                if s and reach >= 0:
                    for r2 in range(max(0, r - reach), min(m, r + reach + 1)):
                        mask |= 1 << r2
            masks.append(mask)
        out.append((sum(a), masks))
    # an assignment is useless when another of no greater cost hears a superset at every offset
    keep = []
    for i, (c, ms) in enumerate(out):
        dominated = False
        for j, (c2, ms2) in enumerate(out):
            if j == i or c2 > c or any(a & ~b for a, b in zip(ms, ms2)):
                continue
            if c2 < c or ms2 != ms or j < i:
                dominated = True
                break
        if not dominated:
            keep.append((c, ms))
    return keep


def _linear_step(states: dict[int, int], m: int, trans) -> dict[int, int]:
    """Place one more column.

    A state packs the heard masks of the four columns c-1..c+2 around the
    last placed column c, m bits each, lowest column first.  Placing column
    c+1 is the last chance to hear column c-1, so it must end up complete.
    """
    full = (1 << m) - 1
    sh = m
    nxt: dict[int, int] = {}
    for st, cst in states.items():
        h0 = st & full
        h1 = (st >> sh) & full
        h2 = (st >> 2 * sh) & full
        h3 = st >> 3 * sh
        for a_cost, (cm2, cm1, c0, cp1, cp2) in trans:
            if h0 | cm2 != full:
                continue
            key = (h1 | cm1) | ((h2 | c0) << sh) | ((h3 | cp1) << 2 * sh) | (cp2 << 3 * sh)
            val = cst + a_cost
            old = nxt.get(key)
            if old is None or val < old:
                nxt[key] = val
    return nxt


def _linear_profile(m: int, n_max: int) -> list[Optional[int]]:
    """gamma_{b,2}(P_m x P_n) for every 1 <= n <= n_max in a single sweep."""
    full = (1 << m) - 1
    trans = _column_coverage(m)
    finish = full | (full << m)
    # nothing placed yet: the two columns left of column 0 do not exist, so count them heard
    states = {finish: 0}
    values: list[Optional[int]] = [None]
    for _ in range(n_max):
        states = _linear_step(states, m, trans)
        done = [c for st, c in states.items() if st & finish == finish]
        values.append(min(done) if done else None)
    return values


def _cyclic_profile(m: int, n: int) -> int:
    """gamma_{b,2}(P_m x C_n) with the columns forming the cycle.

    Columns are placed in order 0..n-1.  After placing column c the state
    holds the heard masks of every column that has already received coverage
    and can still be reached by a later column (cyclic distance <= 2 from one
    of c+1..n-1).  That is the window c-1..c+2 plus columns 0, 1, n-2, n-1.
    A column leaving that set must be fully heard.  Away from the seam the
    four extra columns are passengers, so those steps reuse the linear step.
    """
    full = (1 << m) - 1
    trans = _column_coverage(m)

    def cyc(a: int, b: int) -> int:
        d = abs(a - b) % n
        return min(d, n - d)

    def tracked(c: int) -> tuple[int, ...]:
        touched = {k for k in range(n) if any(cyc(j, k) <= 2 for j in range(c + 1))}
        live = {k for k in range(n) if any(cyc(j, k) <= 2 for j in range(c + 1, n))}
        return tuple(sorted(touched & live))

    def generic_step(states, cols, c):
        new_cols = tracked(c)
        landing: dict[int, list[int]] = {}
        for delta in range(-2, 3):
            landing.setdefault((c + delta) % n, []).append(delta + 2)
        universe = sorted(set(cols) | set(landing))
        pos = {k: i for i, k in enumerate(universe)}
        src_pos = [pos[k] for k in cols]
        land = [(pos[k], offs) for k, offs in landing.items()]
        closing = [pos[k] for k in universe if k not in new_cols]
        keep = [pos[k] for k in new_cols]
        nxt: dict[tuple[int, ...], int] = {}
        for st, cst in states.items():
            base = [0] * len(universe)
            for p, v in zip(src_pos, st):
                base[p] = v
            for a_cost, masks in trans:
                cur = list(base)
                for p, offs in land:
                    for o in offs:
                        cur[p] |= masks[o]
                if any(cur[p] != full for p in closing):
                    continue
                key = tuple(cur[p] for p in keep)
                val = cst + a_cost
                if val < nxt.get(key, val + 1):
                    nxt[key] = val
        return nxt, new_cols

    states: dict[tuple[int, ...], int] = {(): 0}
    cols: tuple[int, ...] = ()
    c = 0
    fast = n >= 9  # a seam-free stretch exists for columns 4..n-5
    while c < n:
        if fast and c == 4:
            # tracked(3) is (0, 1, 2, 3, 4, 5, n-2, n-1): split passengers from window
            assert cols == (0, 1, 2, 3, 4, 5, n - 2, n - 1)
            groups: dict[tuple[int, ...], dict[int, int]] = {}
            for st, cst in states.items():
                p = (st[0], st[1], st[6], st[7])
                w = st[2] | (st[3] << m) | (st[4] << 2 * m) | (st[5] << 3 * m)
                grp = groups.setdefault(p, {})
                if cst < grp.get(w, cst + 1):
                    grp[w] = cst
            while c <= n - 5:
                groups = {p: _linear_step(grp, m, trans) for p, grp in groups.items()}
                c += 1
            states = {}
            for p, grp in groups.items():
                for w, cst in grp.items():
                    st = (p[0], p[1], w & full, (w >> m) & full, (w >> 2 * m) & full,
                          w >> 3 * m, p[2], p[3])
                    if cst < states.get(st, cst + 1):
                        states[st] = cst
            cols = (0, 1, c - 2, c - 1, c, c + 1, n - 2, n - 1)
            continue
        states, cols = generic_step(states, cols, c)
        c += 1
    assert cols == ()
    return states[()]


def exact_profile_dp(family, m: int, n: int, limits: SearchLimits = SearchLimits()) -> int:
    """gamma_{b,2} of P_m x P_n or P_m x C_n for m <= 5, in time linear in n."""
    fam = Family.parse(family)
    make_grid(fam, m, n)  # validates the dimensions
    if fam is Family.CxC or m > PROFILE_MAX_WIDTH:
        raise UnsupportedWidth(f"profile DP handles PxP and PxC with m <= {PROFILE_MAX_WIDTH}")
    if fam is Family.PxP:
        return _linear_profile(m, n)[n]
    return _cyclic_profile(m, n)


def profile_dp_values(m: int, n_max: int) -> dict[int, int]:
    """gamma_{b,2}(P_m x P_n) for all 2 <= n <= n_max from one sweep."""
    if not 2 <= m <= PROFILE_MAX_WIDTH:
        raise UnsupportedWidth(f"profile DP handles 2 <= m <= {PROFILE_MAX_WIDTH}")
    vals = _linear_profile(m, n_max)
    return {n: vals[n] for n in range(2, n_max + 1)}
