"""The hopping forcing game: vertex statuses, legal hops, and policy runs.

A blue vertex whose whole neighbourhood is blue and which has not hopped
yet may colour blue one white vertex at distance exactly two. The state
tracks the blue set, the extinct subset (vertices that already hopped) and
the ordered hop trace.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .graph import RegularGraph, VertexId


class HopIllegal(Exception):
    """Raised when a hop violates the rule; signals a strategy bug."""


class VertexStatus(enum.Enum):
    WHITE = "white"
    DORMANT = "dormant"
    ACTIVE = "active"
    EXTINCT = "extinct"


@dataclass(frozen=True)
class Hop:
    source: VertexId
    target: VertexId


class HopState:
    """Mutable game state owned by a single run; use clone() to snapshot.

    Future legal moves are fully determined by (blue, extinct), so those two
    sets are also the memoization identity used by the exact solver.
    """

    __slots__ = ("graph", "blue", "extinct", "trace")

    def __init__(self, graph: RegularGraph, b1):
        self.graph = graph
        self.blue = set(b1)
        for v in self.blue:
            graph._check_vertex(v)
        self.extinct: set = set()
        self.trace: list = []

    @property
    def step(self) -> int:
        return len(self.trace)

    def clone(self) -> "HopState":
        s = HopState.__new__(HopState)
        s.graph = self.graph
        s.blue = set(self.blue)
        s.extinct = set(self.extinct)
        s.trace = list(self.trace)
        return s

    def white(self) -> set:
        return set(range(self.graph.n)) - self.blue

    def all_blue(self) -> bool:
        return len(self.blue) == self.graph.n

    def is_active(self, v: VertexId) -> bool:
        if v not in self.blue or v in self.extinct:
            return False
        nbrs = self.graph.neighbor_sets()[v]
        if not nbrs <= self.blue:
            return False
        return any(u not in self.blue for u in self.graph.second_neighbor_sets()[v])

    def check_invariants(self) -> None:
        """Raise AssertionError if a state invariant is broken."""
        n = self.graph.n
        assert self.blue <= set(range(n))
        assert self.extinct <= self.blue, "extinct must be blue"
        assert len(self.extinct) == len(self.trace)
        nbrs = self.graph.neighbor_sets()
        for v in self.extinct:
            assert nbrs[v] <= self.blue, f"extinct {v} touches a white vertex"


def status(s: HopState, v: VertexId) -> VertexStatus:
    """Classify v: white, extinct (already hopped), active (may hop now),
    or dormant (blue but blocked)."""
    s.graph._check_vertex(v)
    if v not in s.blue:
        return VertexStatus.WHITE
    if v in s.extinct:
        return VertexStatus.EXTINCT
    if s.is_active(v):
        return VertexStatus.ACTIVE
    return VertexStatus.DORMANT


def active_set(s: HopState) -> set:
    """All vertices currently able to hop."""
    return {v for v in s.blue - s.extinct if s.is_active(v)}


def legal_moves(s: HopState):
    """Yield every legal (source, target) pair in vertex order."""
    n2 = s.graph.second_neighbor_sets()
    for x in sorted(s.blue - s.extinct):
        if not s.graph.neighbor_sets()[x] <= s.blue:
            continue
        for y in sorted(n2[x]):
            if y not in s.blue:
                yield x, y


def apply_hop(s: HopState, x: VertexId, y: VertexId) -> HopState:
    """Perform the hop x -> y in place and return the state.

    Raises HopIllegal unless x is active and y is a white vertex at distance
    exactly two from x.
    """
    g = s.graph
    g._check_vertex(x)
    g._check_vertex(y)
    if x not in s.blue:
        raise HopIllegal(f"source {x} is white")
    if x in s.extinct:
        raise HopIllegal(f"source {x} already hopped")
    nbrs = g.neighbor_sets()[x]
    if not nbrs <= s.blue:
        raise HopIllegal(f"source {x} has a white neighbour")
    if y in s.blue:
        raise HopIllegal(f"target {y} is already blue")
    # distance exactly 2: a neighbour's neighbour that is not adjacent to x
    if y in nbrs or not any(y in g.neighbor_sets()[u] for u in nbrs):
        raise HopIllegal(f"target {y} is not at distance 2 from {x}")
    s.blue.add(y)
    s.extinct.add(x)
    s.trace.append(Hop(x, y))
    return s


def run_policy(g: RegularGraph, b1, policy) -> HopState:
    """Play hops chosen by `policy(state)` until no vertex is active.

    The policy is only queried on states with a nonempty active set and must
    return a legal (source, target) pair; it owns all tie-breaking. Success
    means the final state has no white vertex.
    """
    s = HopState(g, b1)
    while not s.all_blue():
        if not active_set(s):
            break
        x, y = policy(s)
        apply_hop(s, x, y)
    return s


def replay_trace(g: RegularGraph, b1, trace) -> HopState:
    """Re-run a recorded trace from b1, validating every hop."""
    s = HopState(g, b1)
    for hop in trace:
        x, y = (hop.source, hop.target) if isinstance(hop, Hop) else hop
        apply_hop(s, x, y)
    return s


def count_replay_failures(g: RegularGraph, b1, trace) -> int:
    """Count hops of `trace` that are illegal when replayed from b1.

    An illegal hop's target is force-coloured so the remainder of the trace
    can still be checked; the count is reported, never hidden.
    """
    s = HopState(g, b1)
    failures = 0
    for hop in trace:
        x, y = (hop.source, hop.target) if isinstance(hop, Hop) else hop
        try:
            apply_hop(s, x, y)
        except HopIllegal:
            failures += 1
            s.blue.add(y)
            s.extinct.add(x)
            s.trace.append(Hop(x, y))
    return failures


def trace_to_json(b1, trace) -> str:
    """Serialize an initial blue set and hop trace."""
    payload = {
        "b1": sorted(int(v) for v in b1),
        "hops": [
            {"step": i + 1, "source": int(h.source), "target": int(h.target)}
            for i, h in enumerate(trace)
        ],
    }
    return json.dumps(payload, indent=2)


def trace_from_json(text: str):
    """Inverse of trace_to_json: returns (b1, trace)."""
    payload = json.loads(text)
    b1 = set(payload["b1"])
    trace = [Hop(h["source"], h["target"]) for h in payload["hops"]]
    return b1, trace
