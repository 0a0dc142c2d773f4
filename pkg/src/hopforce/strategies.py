"""Constructive upper-bound strategies.

Both strategies build the initial blue set online: any vertex coloured blue
other than as a hop target is charged to b1, so b1_size + hops = n exactly
whenever the run colours everything.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import Hop
from .graph import RegularGraph
from .models import ContiguousGraph, LazyPairing


@dataclass
class StrategyResult:
    b1: frozenset
    b1_size: int
    hops: list
    failed_attempts: int
    success: bool
    graph: RegularGraph | None = None      # realized graph, when the run owns it


@dataclass
class GreedyTrajectory:
    """Per-step census of the degree-greedy process.

    y[k, i] is the number of vertices with i unmatched points after step
    t[k]; hops[k] counts successful hops so far; selected_degree[k] is the
    unmatched degree of the vertex processed at that step.
    """

    n: int
    t: np.ndarray
    y: np.ndarray
    hops: np.ndarray
    selected_degree: np.ndarray


def hamilton_hop_strategy(cg: ContiguousGraph) -> StrategyResult:
    """Hop along the Hamilton cycle of a contiguous-model graph.

    Start with v0 and its whole neighbourhood blue. At step t, vertex v_t
    tries to hop through v_{t+1}: to v_{t+2} if that is white, else to a
    white RG-neighbour of v_{t+1} (lowest index first). A hop target must be
    white and at distance exactly two, which excludes multi-edge collisions.
    If no target exists the attempt fails and is counted. Afterwards all
    still-white neighbours of v_{t+1} are coloured and charged to b1, so
    v_{t+1} enters its own step with a fully blue neighbourhood. Always
    colours the whole graph.
    """
    n, d = cg.n, cg.d
    if d < 3:
        raise ValueError("strategy needs d >= 3")
    rg = cg.rg_adjacency
    blue = bytearray(n)
    charged = bytearray(n)

    def charge(v):
        if not blue[v]:
            blue[v] = 1
            charged[v] = 1

    def all_nbrs(v):
        yield (v - 1) % n
        yield (v + 1) % n
        yield from rg[v]

    charge(0)
    for u in all_nbrs(0):
        charge(u)

    hops = []
    failed = 0
    for t in range(n - 3):
        vt, vt1, vt2 = t, t + 1, t + 2
        vt_nbrs = set(all_nbrs(vt))
        target = -1
        if not blue[vt2] and vt2 not in vt_nbrs:
            target = vt2
        else:
            for u in sorted(rg[vt1]):
                if not blue[u] and u not in vt_nbrs and u != vt:
                    target = u
                    break
        if target >= 0:
            blue[target] = 1
            hops.append(Hop(vt, target))
        else:
            failed += 1
        for u in all_nbrs(vt1):
            charge(u)

    # by construction nothing is left white here; charge defensively anyway
    for v in range(n):
        charge(v)

    b1 = frozenset(v for v in range(n) if charged[v])
    return StrategyResult(
        b1=b1,
        b1_size=len(b1),
        hops=hops,
        failed_attempts=failed,
        success=True,
    )


def degree_greedy_strategy(n: int, rng: np.random.Generator,
                           record_every: int = 1):
    """Degree-greedy hopping on a lazily exposed 3-regular pairing.

    Each step selects a uniform vertex of minimum positive unmatched degree
    among those that never hopped, exposes all its remaining points (newly
    discovered white neighbours are charged to b1), then attempts one hop:
    the neighbours discovered this step are tried in ascending order of
    remaining unmatched points (ties broken uniformly); each try exposes one
    point of the tried neighbour, and the first partner that was still white
    becomes the hop target. On success the step ends; with no white partner
    found the attempt fails. Returns (StrategyResult, GreedyTrajectory).
    """
    if (3 * n) % 2 != 0:
        raise ValueError("3*n must be even")
    lp = LazyPairing(n, 3, rng)
    free = lp.free
    charged = bytearray(n)

    # vertices grouped by unmatched degree, uniform O(1) pick and removal
    lists = {1: [], 2: [], 3: list(range(n))}
    where = [(3, i) for i in range(n)]

    def bucket_move(v, frm, to):
        lst = lists[frm]
        _, i = where[v]
        last = lst.pop()
        if last != v:
            lst[i] = last
            where[last] = (frm, i)
        if to > 0:
            where[v] = (to, len(lists[to]))
            lists[to].append(v)
        else:
            where[v] = (0, -1)

    counts = [0, 0, 0, n]

    def expose(v):
        """One exposure from v; returns (partner, partner_was_white)."""
        fv = free[v]
        w = lp.expose(v)
        counts[fv] -= 1
        counts[fv - 1] += 1
        bucket_move(v, fv, fv - 1)
        fw = free[w] + 1                 # partner count before this match
        was_white = fw == 3
        counts[fw] -= 1
        counts[fw - 1] += 1
        bucket_move(w, fw, fw - 1)
        return w, was_white

    rec_t, rec_y, rec_h, rec_r = [], [], [], []
    hops = []
    failed = 0
    t = 0
    while True:
        alpha = None
        r = 0
        for deg in (1, 2, 3):
            if lists[deg]:
                lst = lists[deg]
                alpha = lst[int(rng.integers(len(lst)))]
                r = deg
                break
        if alpha is None:
            break
        if free[alpha] == 3:
            charged[alpha] = 1           # fresh white vertex enters play
        # expose all remaining points of alpha
        discovered = []
        while free[alpha] > 0:
            w, was_white = expose(alpha)
            if was_white:
                charged[w] = 1
            if w != alpha:
                discovered.append(w)
        # hop attempt over this step's neighbours, fewest free points first
        rng.shuffle(discovered)
        discovered.sort(key=free.__getitem__)
        success = False
        for u in discovered:
            while free[u] > 0 and not success:
                w, was_white = expose(u)
                if was_white:
                    hops.append(Hop(alpha, w))
                    success = True
            if success:
                break
        if not success:
            failed += 1
        t += 1
        if t % record_every == 0:
            rec_t.append(t)
            rec_y.append(tuple(counts))
            rec_h.append(len(hops))
            rec_r.append(r)

    if not rec_t or rec_t[-1] != t:      # keep the final census
        rec_t.append(t)
        rec_y.append(tuple(counts))
        rec_h.append(len(hops))
        rec_r.append(r)

    traj = GreedyTrajectory(
        n=n,
        t=np.array(rec_t, dtype=np.int64),
        y=np.array(rec_y, dtype=np.int64).reshape(len(rec_t), 4),
        hops=np.array(rec_h, dtype=np.int64),
        selected_degree=np.array(rec_r, dtype=np.int64),
    )
    b1 = frozenset(v for v in range(n) if charged[v])
    result = StrategyResult(
        b1=b1,
        b1_size=len(b1),
        hops=hops,
        failed_attempts=failed,
        success=True,
        graph=_realized_graph(lp),
    )
    return result, traj


def _realized_graph(lp: LazyPairing) -> RegularGraph:
    adj = [[] for _ in range(lp.n)]
    for p, q in enumerate(lp.matching):
        if p < q:
            u, v = p // lp.d, q // lp.d
            adj[u].append(v)
            adj[v].append(u)
    return RegularGraph(lp.n, lp.d, adj)
