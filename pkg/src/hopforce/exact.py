"""Brute-force oracle for the hopping game on small graphs.

Feasibility of an initial blue set is decided by depth-first search over
game states; a state is the bitmask pair (blue, extinct), which fully
determines all future legal moves. One memo table serves every starting set
of the same graph since subproblems recur massively across subsets.
"""

from __future__ import annotations

import os
from itertools import combinations

from .engine import Hop, HopState, apply_hop
from .graph import RegularGraph

DEFAULT_SOLVER_LIMIT = 24
_LIMIT_ENV = "HOPFORCE_SOLVER_LIMIT"


class InstanceTooLarge(Exception):
    """Raised when a graph exceeds the exponential-search vertex cap."""


def solver_limit() -> int:
    v = os.environ.get(_LIMIT_ENV)
    return int(v) if v else DEFAULT_SOLVER_LIMIT


def _mask(vs) -> int:
    b = 0
    for v in vs:
        b |= 1 << v
    return b


class ExactSolver:
    """Memoized search bound to one graph.

    The vertex cap (default 24, env HOPFORCE_SOLVER_LIMIT) is a guard
    against accidental exponential blowups, not a promise of speed below it.
    """

    def __init__(self, g: RegularGraph, limit: int | None = None):
        cap = solver_limit() if limit is None else limit
        if g.n > cap:
            raise InstanceTooLarge(f"n={g.n} exceeds solver limit {cap}")
        self.graph = g
        n = g.n
        nbr = [0] * n
        for v, row in enumerate(g.neighbor_sets()):
            for u in row:
                nbr[v] |= 1 << u
        n2 = [0] * n
        for v, row in enumerate(g.second_neighbor_sets()):
            for u in row:
                n2[v] |= 1 << u
        self.n = n
        self._nbr = nbr
        self._n2 = n2
        self._full = (1 << n) - 1
        self._memo: dict = {}

    def _feasible(self, blue: int, extinct: int) -> bool:
        if blue == self._full:
            return True
        key = (blue, extinct)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        ok = False
        white = self._full & ~blue
        m = blue & ~extinct
        while m and not ok:
            x = (m & -m).bit_length() - 1
            m &= m - 1
            if self._nbr[x] & white:
                continue
            tm = self._n2[x] & white
            while tm:
                y = (tm & -tm).bit_length() - 1
                tm &= tm - 1
                if self._feasible(blue | (1 << y), extinct | (1 << x)):
                    ok = True
                    break
        self._memo[key] = ok
        return ok

    def is_feasible(self, b1) -> bool:
        return self._feasible(_mask(b1), 0)

    def trace(self, b1):
        """One successful hop sequence from b1, or None if infeasible."""
        blue, extinct = _mask(b1), 0
        if not self._feasible(blue, extinct):
            return None
        hops = []
        while blue != self._full:
            white = self._full & ~blue
            advanced = False
            m = blue & ~extinct
            while m and not advanced:
                x = (m & -m).bit_length() - 1
                m &= m - 1
                if self._nbr[x] & white:
                    continue
                tm = self._n2[x] & white
                while tm:
                    y = (tm & -tm).bit_length() - 1
                    tm &= tm - 1
                    if self._feasible(blue | (1 << y), extinct | (1 << x)):
                        hops.append(Hop(x, y))
                        blue |= 1 << y
                        extinct |= 1 << x
                        advanced = True
                        break
            assert advanced, "feasible state must admit a feasible move"
        return hops

    def hopping_number(self) -> int:
        return self.optimal_set()[0]

    def optimal_set(self):
        """(H(G), one optimal initial blue set), by ascending subset size."""
        for k in range(1, self.n + 1):
            for comb in combinations(range(self.n), k):
                if self._feasible(_mask(comb), 0):
                    return k, frozenset(comb)
        return self.n, frozenset(range(self.n))   # B1 = V is always feasible


def is_feasible(g: RegularGraph, b1, limit: int | None = None) -> bool:
    """True iff some hop sequence from b1 colours every vertex blue."""
    return ExactSolver(g, limit).is_feasible(b1)


def feasible_trace(g: RegularGraph, b1, limit: int | None = None):
    """A successful hop sequence from b1, or None if infeasible."""
    return ExactSolver(g, limit).trace(b1)


def hopping_number(g: RegularGraph, limit: int | None = None) -> int:
    """Minimum size of a feasible initial blue set."""
    return ExactSolver(g, limit).hopping_number()


def optimal_set(g: RegularGraph, limit: int | None = None):
    """(H(G), one optimal initial blue set)."""
    return ExactSolver(g, limit).optimal_set()


def partition_witness(g: RegularGraph, trace, b1):
    """Replay `trace` (a successful run from b1) for floor((n-k)/2) hops and
    return (S, T, U): the extinct set, the white set, and the remainder.

    No edge joins S and T: a vertex may only hop once its whole
    neighbourhood is blue, and white vertices only ever leave the white set.
    For odd n-k the split is floor/ceil.
    """
    n = g.n
    k = len(set(b1))
    t_star = (n - k) // 2
    if len(trace) < t_star:
        raise ValueError(f"trace has {len(trace)} hops; needs at least {t_star}")
    s = HopState(g, b1)
    for hop in trace[:t_star]:
        x, y = (hop.source, hop.target) if isinstance(hop, Hop) else hop
        apply_hop(s, x, y)
    S = frozenset(s.extinct)
    T = frozenset(s.white())
    U = frozenset(range(n)) - S - T
    return S, T, U
