"""Immutable graph type with distance-2 queries for the hopping game.

Vertices are integers 0..n-1. Adjacency is stored as a per-vertex list of
neighbour indices with multiplicity: a loop at v lists v twice, a parallel
edge lists its endpoint twice. For a d-regular graph every per-vertex list
has length d.
"""

from __future__ import annotations

from collections import Counter

VertexId = int


class RegularGraph:
    """A (multi)graph tagged with a declared degree d.

    Loops and parallel edges are allowed; `simple` is computed, not assumed.
    The declared degree is checked by :func:`is_regular`, not enforced at
    construction, so slightly irregular inputs (test paths, hand-built
    graphs) still work with the engine and the exact solver. Instances are
    immutable after construction and safe to share for concurrent reads.
    """

    __slots__ = ("n", "d", "adjacency", "simple", "_nbr_sets", "_n2_sets")

    def __init__(self, n: int, d: int, adjacency):
        if n <= 0:
            raise ValueError("n must be positive")
        if len(adjacency) != n:
            raise ValueError("adjacency must have one entry per vertex")
        adj = tuple(tuple(sorted(int(u) for u in row)) for row in adjacency)
        for v, row in enumerate(adj):
            for u in row:
                if not 0 <= u < n:
                    raise ValueError(f"neighbour {u} of vertex {v} out of range")
        counts = [Counter(row) for row in adj]
        for v, row in enumerate(adj):
            for u in set(row):
                if u != v and counts[u][v] != counts[v][u]:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
            if counts[v][v] % 2 != 0:
                raise ValueError(f"loop at {v} must contribute two endpoints")
        self.n = n
        self.d = d
        self.adjacency = adj
        self.simple = self._check_simple()
        self._nbr_sets = None
        self._n2_sets = None

    @classmethod
    def from_edges(cls, n: int, d: int, edges) -> "RegularGraph":
        """Build from an iterable of (u, v) pairs; loops given as (u, u)."""
        adj = [[] for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            adj[u].append(v)
            adj[v].append(u)
        return cls(n, d, adj)

    def _check_simple(self) -> bool:
        for v, row in enumerate(self.adjacency):
            if v in row or len(set(row)) != len(row):
                return False
        return True

    def _check_vertex(self, v: VertexId) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"invalid vertex id {v} for graph on {self.n} vertices")

    def neighbor_sets(self):
        """Per-vertex frozensets of distinct neighbours, loops excluded."""
        if self._nbr_sets is None:
            self._nbr_sets = tuple(
                frozenset(u for u in row if u != v)
                for v, row in enumerate(self.adjacency)
            )
        return self._nbr_sets

    def second_neighbor_sets(self):
        if self._n2_sets is None:
            nbrs = self.neighbor_sets()
            out = []
            for v in range(self.n):
                acc = set()
                for u in nbrs[v]:
                    acc |= nbrs[u]
                acc -= nbrs[v]
                acc.discard(v)
                out.append(frozenset(acc))
            self._n2_sets = tuple(out)
        return self._n2_sets

    def edges(self):
        """Edge occurrences as (u, v) with u <= v, multiplicity kept."""
        out = []
        for v, row in enumerate(self.adjacency):
            loops = 0
            for u in row:
                if u == v:
                    loops += 1
                elif u > v:
                    out.append((v, u))
            out.extend((v, v) for _ in range(loops // 2))
        return out


def neighbors(g: RegularGraph, v: VertexId) -> set:
    """Distinct neighbours of v. A loop does not make v its own neighbour."""
    g._check_vertex(v)
    return set(g.neighbor_sets()[v])


def second_neighborhood(g: RegularGraph, v: VertexId) -> set:
    """Vertices at graph distance exactly two from v.

    Multiplicity is ignored: parallel edges do not change distances.
    """
    g._check_vertex(v)
    return set(g.second_neighbor_sets()[v])


def is_regular(g: RegularGraph) -> bool:
    """True iff every vertex has exactly d edge-endpoints (loops count twice)."""
    return all(len(row) == g.d for row in g.adjacency)


def cycle_graph(n: int) -> RegularGraph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return RegularGraph.from_edges(n, 2, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> RegularGraph:
    return RegularGraph.from_edges(
        n, n - 1, [(i, j) for i in range(n) for j in range(i + 1, n)]
    )


def path_graph(n: int) -> RegularGraph:
    """Path on n vertices; declared degree 2, so is_regular is False for n >= 2."""
    return RegularGraph.from_edges(n, 2, [(i, i + 1) for i in range(n - 1)])


def write_edge_list(g: RegularGraph, extra_comments=()) -> str:
    """Serialize to the text format: `n d` header then one `u v` line per edge."""
    lines = [f"{g.n} {g.d}"]
    lines.extend(extra_comments)
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> RegularGraph:
    """Parse the edge-list format. Lines starting with '#' are ignored."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty edge list")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("first line must be 'n d'")
    n, d = int(head[0]), int(head[1])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return RegularGraph.from_edges(n, d, edges)
