"""Random d-regular multigraph models: uniform pairings, rejection to simple
graphs, the Hamilton-cycle-plus-(d-2)-regular union, and cycle counting for
d = 2.

All samplers take a numpy Generator. Independent trials should use streams
derived via :func:`trial_rng` so runs are reproducible and parallelizable.
"""

from __future__ import annotations

import numpy as np

from .graph import RegularGraph


def trial_rng(master_seed: int, trial: int) -> np.random.Generator:
    """Counter-style per-trial stream: trial i uses (master_seed, spawn i)."""
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(trial,)))


class Pairing:
    """A perfect matching on d*n labelled points in n buckets of d points.

    Point p belongs to bucket p // d. `matching[p]` is the partner of p;
    the matching is a fixed-point-free involution.
    """

    __slots__ = ("n", "d", "matching")

    def __init__(self, n: int, d: int, matching):
        m = n * d
        if m % 2 != 0:
            raise ValueError("d*n must be even")
        matching = [int(q) for q in matching]
        if len(matching) != m:
            raise ValueError("matching must cover all d*n points")
        for p, q in enumerate(matching):
            if q == p or matching[q] != p:
                raise ValueError("matching must be a fixed-point-free involution")
        self.n = n
        self.d = d
        self.matching = tuple(matching)

    def pairs(self):
        return [(p, q) for p, q in enumerate(self.matching) if p < q]


def sample_pairing(n: int, d: int, rng: np.random.Generator) -> Pairing:
    """Uniformly random pairing of the d*n points.

    Realized by shuffling the points and pairing them consecutively, which
    has the same law as sequential exposure (repeatedly matching the lowest
    unmatched point to a uniform unmatched partner). Lazy exposure is
    available through :class:`LazyPairing`.
    """
    m = n * d
    if m % 2 != 0:
        raise ValueError("d*n must be even")
    perm = rng.permutation(m)
    matching = [0] * m
    for i in range(0, m, 2):
        p, q = int(perm[i]), int(perm[i + 1])
        matching[p] = q
        matching[q] = p
    return Pairing(n, d, matching)


def pairing_to_graph(p: Pairing) -> RegularGraph:
    """Project a pairing to its multigraph: each pair becomes an edge."""
    adj = [[] for _ in range(p.n)]
    for a, b in p.pairs():
        u, v = a // p.d, b // p.d
        adj[u].append(v)
        adj[v].append(u)
    return RegularGraph(p.n, p.d, adj)


def sample_simple_regular(n: int, d: int, rng: np.random.Generator) -> RegularGraph:
    """Rejection-sample pairings until the projected graph is simple.

    The result is uniform over simple d-regular graphs on n vertices; for
    fixed d the expected number of rejections is constant.
    """
    if n <= d:
        raise ValueError("need n > d for a simple d-regular graph")
    while True:
        g = pairing_to_graph(sample_pairing(n, d, rng))
        if g.simple:
            return g


class LazyPairing:
    """A pairing exposed one point at a time, uniformly over unmatched points.

    Supports the degree-greedy process: callers pick which bucket exposes
    next; the partner is always uniform among the remaining points, so any
    exposure order yields the uniform pairing law.
    """

    def __init__(self, n: int, d: int, rng: np.random.Generator):
        m = n * d
        if m % 2 != 0:
            raise ValueError("d*n must be even")
        self.n = n
        self.d = d
        self.rng = rng
        self._pool = list(range(m))          # unmatched points
        self._pos = list(range(m))           # point -> index in pool
        self._vfree = [list(range(v * d, (v + 1) * d)) for v in range(n)]
        self.free = [d] * n                  # unmatched points per bucket
        self.matching = [-1] * m

    def remaining(self) -> int:
        return len(self._pool)

    def _pool_remove(self, p: int) -> None:
        i = self._pos[p]
        last = self._pool.pop()
        if last != p:
            self._pool[i] = last
            self._pos[last] = i
        self._pos[p] = -1

    def expose(self, v: int) -> int:
        """Match one unmatched point of bucket v to a uniform unmatched point.

        Returns the partner's bucket (possibly v itself, forming a loop).
        """
        if self.free[v] == 0:
            raise ValueError(f"bucket {v} has no unmatched points")
        p = self._vfree[v].pop()
        self.free[v] -= 1
        self._pool_remove(p)
        if not self._pool:
            raise ValueError("no unmatched partner available")
        q = self._pool[int(self.rng.integers(len(self._pool)))]
        self._pool_remove(q)
        w = q // self.d
        self._vfree[w].remove(q)
        self.free[w] -= 1
        self.matching[p] = q
        self.matching[q] = p
        return w

    def expose_next(self) -> tuple:
        """Match the lowest-indexed unmatched point; returns (point, partner)."""
        p = min(self._pool)
        v = p // self.d
        self._vfree[v].remove(p)
        self._vfree[v].append(p)             # make expose() pick exactly p
        w = self.expose(v)
        return p, self.matching[p]

    def to_pairing(self) -> Pairing:
        if self._pool:
            raise ValueError("pairing not fully exposed")
        return Pairing(self.n, self.d, self.matching)


class ContiguousGraph:
    """Union of the Hamilton cycle (v0, ..., v_{n-1}) and an independent
    (d-2)-regular pairing on the same vertices.

    Each vertex has exactly two cycle endpoints and d-2 endpoints from the
    regular part; multi-edges between the two parts are kept.
    """

    __slots__ = ("n", "d", "hamilton_order", "rg_adjacency", "_base")

    def __init__(self, n: int, d: int, rg_adjacency):
        self.n = n
        self.d = d
        self.hamilton_order = tuple(range(n))
        self.rg_adjacency = tuple(tuple(row) for row in rg_adjacency)
        if any(len(row) != d - 2 for row in self.rg_adjacency):
            raise ValueError("every vertex needs exactly d-2 RG endpoints")
        self._base = None

    def hc_neighbors(self, v: int) -> tuple:
        return ((v - 1) % self.n, (v + 1) % self.n)

    @property
    def base(self) -> RegularGraph:
        """The combined d-regular multigraph (built on first use)."""
        if self._base is None:
            n = self.n
            adj = [list(row) for row in self.rg_adjacency]
            for v in range(n):
                adj[v].append((v - 1) % n)
                adj[v].append((v + 1) % n)
            self._base = RegularGraph(n, self.d, adj)
        return self._base


def sample_contiguous(n: int, d: int, rng: np.random.Generator) -> ContiguousGraph:
    """Hamilton cycle on the identity order plus an independent (d-2)-regular
    pairing. Requires d >= 3 and (d-2)*n even."""
    if d < 3:
        raise ValueError("contiguous model needs d >= 3")
    if n < 3:
        raise ValueError("need n >= 3 for a Hamilton cycle")
    if ((d - 2) * n) % 2 != 0:
        raise ValueError("(d-2)*n must be even")
    p = sample_pairing(n, d - 2, rng)
    adj = [[] for _ in range(n)]
    for a, b in p.pairs():
        u, v = a // p.d, b // p.d
        adj[u].append(v)
        adj[v].append(u)
    return ContiguousGraph(n, d, adj)


def count_cycles_2regular(n: int, rng: np.random.Generator) -> int:
    """Number of cycles of a random 2-regular multigraph on n vertices.

    The pairing is exposed path by path: at exposure step i only the event
    "the current path closes into a cycle" matters, and it has probability
    exactly 1/(2n-2i+1) independently of the history. Loops and 2-cycles
    count as cycles.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    odds = 1.0 / (2 * n - 2 * np.arange(1, n + 1) + 1)
    return int(np.count_nonzero(rng.random(n) < odds))


def expected_cycles(n: int) -> float:
    """Exact mean cycle count: sum of 1/(2n-2i+1) = H_{2n} - H_n / 2."""
    return float(np.sum(1.0 / (2 * n - 2 * np.arange(1, n + 1, dtype=np.float64) + 1)))


def cycle_count_exact(g: RegularGraph) -> int:
    """Count cycles of a 2-regular multigraph as its connected components.

    Independent of the sequential-exposure counting; used to cross-check it.
    """
    if not all(len(row) == 2 for row in g.adjacency):
        raise ValueError("graph is not 2-regular")
    seen = [False] * g.n
    comps = 0
    for s in range(g.n):
        if seen[s]:
            continue
        comps += 1
        stack = [s]
        seen[s] = True
        while stack:
            v = stack.pop()
            for u in g.adjacency[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
    return comps
