"""Adjacency spectra and edge-count deviations for regular graphs.

lambda(G) is the largest absolute value among adjacency eigenvalues other
than the trivial one (which equals d for a d-regular graph). Small lambda
means strong expansion: |E(S,T)| stays close to d|S||T|/n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exact import InstanceTooLarge
from .graph import RegularGraph

DENSE_EIGEN_LIMIT = 4096


@dataclass
class SpectrumSummary:
    lambda1: float
    lambda_: float
    spectrum: np.ndarray | None = None


def adjacency_matrix(g: RegularGraph) -> np.ndarray:
    """Dense symmetric adjacency; a loop contributes 2 on the diagonal."""
    a = np.zeros((g.n, g.n))
    for v, row in enumerate(g.adjacency):
        for u in row:
            a[v, u] += 1.0
    return a


def lambda_of(g: RegularGraph, keep_spectrum: bool = False,
              limit: int = DENSE_EIGEN_LIMIT) -> SpectrumSummary:
    """Full symmetric eigendecomposition; returns (lambda1, lambda).

    Requires a simple regular graph small enough for the dense solver.
    """
    if g.n > limit:
        raise InstanceTooLarge(f"n={g.n} exceeds dense eigensolver limit {limit}")
    if not g.simple:
        raise ValueError("lambda is defined here for simple graphs")
    vals = np.linalg.eigvalsh(adjacency_matrix(g))    # ascending
    lam1 = float(vals[-1])
    lam = float(max(abs(vals[-2]), abs(vals[0]))) if g.n > 1 else 0.0
    return SpectrumSummary(
        lambda1=lam1,
        lambda_=lam,
        spectrum=vals if keep_spectrum else None,
    )


def edges_between(g: RegularGraph, S, T) -> int:
    """Sum of A[u, v] over u in S, v in T.

    Edges inside S ∩ T count twice; a loop at v in S ∩ T counts twice as
    well (its diagonal entry is 2). With S = T = V this equals 2|E|.
    """
    S, T = set(S), set(T)
    total = 0
    for u in S:
        g._check_vertex(u)
        for v in g.adjacency[u]:
            if v in T:
                total += 1
    return total


def mixing_residual(g: RegularGraph, S, T) -> float:
    """|E(S,T)| minus the density prediction d|S||T|/n.

    For any S, T the residual is bounded by lambda * sqrt(|S||T|); for
    T = V \\ S the sharper bound lambda |S||T| / n holds.
    """
    S, T = set(S), set(T)
    return edges_between(g, S, T) - g.d * len(S) * len(T) / g.n
