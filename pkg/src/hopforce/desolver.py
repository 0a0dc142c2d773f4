"""Mean-field ODE system for the degree-greedy hopping process (d = 3).

One process step handles one vertex, so step count scaled by n becomes the
time variable x. The state y = (y0, y1, y2, y3) holds the fractions of
vertices with 0..3 unmatched points. Each step is either a degree-1 or a
degree-2 hop attempt; the one-step transition laws are finite case tables
in a = 3*y3/s and b = 2*y2/s with s = y1 + 2*y2 + 3*y3.

Degree-1 vertices are prioritized, which keeps y1 at zero: the two step
kinds are mixed with weights tau/(beta+tau) (degree-2) and beta/(beta+tau)
(degree-1), where beta is the expected number of degree-1 vertices a
degree-2 step creates and tau the expected number a degree-1 step consumes.
An auxiliary variable integrates the per-step hop success probability,
giving the fraction of vertices that hop.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

# One row per transition case: coeff, power of a, power of b,
# change in Y0..Y3, and whether the case includes a successful hop.
ROWS_DEG1 = np.array([
    [1, 2, 0, 1, 0, 1, -2, 1],
    [1, 2, 1, 2, 0, 0, -2, 1],
    [1, 1, 2, 2, 1, -2, -1, 0],
    [1, 1, 1, 2, -1, 0, -1, 1],
    [1, 0, 2, 2, 0, -2, 0, 0],
], dtype=np.float64)

# The first case (both newly found neighbours still full, first hop try
# lands on a white vertex) has probability a^3: the twelve case
# probabilities then sum to one on a + b = 1, as a complete case split must.
ROWS_DEG2 = np.array([
    [1, 3, 0, 1, 1, 1, -3, 1],
    [1, 3, 1, 2, 1, 0, -3, 1],
    [1, 3, 2, 2, 3, -2, -3, 1],
    [1, 3, 3, 3, 3, -3, -3, 1],
    [1, 2, 4, 3, 4, -5, -2, 0],
    [2, 2, 1, 2, 0, 0, -2, 1],
    [2, 2, 2, 2, 2, -2, -2, 1],
    [2, 2, 3, 3, 2, -3, -2, 1],
    [2, 1, 4, 3, 3, -5, -1, 0],
    [1, 1, 2, 2, 1, -2, -1, 1],
    [1, 1, 3, 3, 1, -3, -1, 1],
    [1, 0, 4, 3, 2, -5, 0, 0],
], dtype=np.float64)

TOL = 1e-12


class SingularMixture(Exception):
    """beta + tau <= 0: the step mixture is undefined (process over)."""


class OdeStepFailure(Exception):
    """NaN or negative population beyond tolerance; never silently clamped."""


def drift_rows(r: int) -> np.ndarray:
    """The transition table for hop attempts from degree r (1 or 2)."""
    if r == 1:
        return ROWS_DEG1
    if r == 2:
        return ROWS_DEG2
    raise ValueError("r must be 1 or 2")


def _ab(y) -> tuple:
    s = y[1] + 2.0 * y[2] + 3.0 * y[3]
    if s <= 0.0:
        raise ValueError("s = y1 + 2 y2 + 3 y3 must be positive")
    return 3.0 * y[3] / s, 2.0 * y[2] / s


def drift(i: int, r: int, y) -> float:
    """Expected one-step change of Y_i for a degree-r hop attempt."""
    if not 0 <= i <= 3:
        raise ValueError("degree class i must be 0..3")
    a, b = _ab(y)
    rows = drift_rows(r)
    return float(sum(c * a ** pa * b ** pb * dy[i]
                     for c, pa, pb, *dy, _hop in rows))


def hop_probability(r: int, y) -> float:
    """Probability that a degree-r step performs a successful hop."""
    a, b = _ab(y)
    rows = drift_rows(r)
    return float(sum(c * a ** pa * b ** pb
                     for c, pa, pb, *_dy, hop in rows if hop))


def beta_tau(y) -> tuple:
    """(beta, tau): degree-1 vertices created per degree-2 step, and
    consumed per degree-1 step."""
    return drift(1, 2, y), -drift(1, 1, y)


def mixture_rhs(x: float, y) -> tuple:
    """Right-hand side (dy0..dy3, dhopped)/dx of the mixed process.

    The system is autonomous; x is accepted for the usual ODE signature.
    Raises SingularMixture when beta + tau <= 0.
    """
    beta, tau = beta_tau(y)
    den = beta + tau
    if den <= 0.0:
        raise SingularMixture(f"beta + tau = {den}")
    w2, w1 = tau / den, beta / den
    dy = tuple(w2 * drift(i, 2, y) + w1 * drift(i, 1, y) for i in range(4))
    dhop = w2 * hop_probability(2, y) + w1 * hop_probability(1, y)
    return dy + (dhop,)


@njit(cache=True)
def _rhs_nb(y, rows1, rows2, out):
    s = y[1] + 2.0 * y[2] + 3.0 * y[3]
    if s <= 0.0:
        return -1.0, -1.0, False
    a = 3.0 * y[3] / s
    b = 2.0 * y[2] / s
    f1 = np.zeros(4)
    p1 = 0.0
    for i in range(rows1.shape[0]):
        p = rows1[i, 0] * a ** rows1[i, 1] * b ** rows1[i, 2]
        for k in range(4):
            f1[k] += p * rows1[i, 3 + k]
        p1 += p * rows1[i, 7]
    f2 = np.zeros(4)
    p2 = 0.0
    for i in range(rows2.shape[0]):
        p = rows2[i, 0] * a ** rows2[i, 1] * b ** rows2[i, 2]
        for k in range(4):
            f2[k] += p * rows2[i, 3 + k]
        p2 += p * rows2[i, 7]
    beta = f2[1]
    tau = -f1[1]
    den = beta + tau
    if den <= 0.0:
        return tau, beta, False
    for k in range(4):
        out[k] = (tau * f2[k] + beta * f1[k]) / den
    out[4] = (tau * p2 + beta * p1) / den
    return tau, beta, True


@njit(cache=True)
def _integrate_nb(h, x0, rows1, rows2, record_every, tol):
    """Fixed-step RK4 from the seeded start until a termination condition.

    Returns (records, reason) where reason is
      0 tau <= tol, 1 y2 <= tol, 2 beta+tau <= tol,
      3 singularity hit inside a step, 4 s <= 0, 5 ran past x = 1.4,
      6 NaN or negative population (error).
    """
    y = np.array([x0, 0.0, x0, 1.0 - 2.0 * x0, x0])
    x = x0
    max_rec = int(1.5 / (h * record_every)) + 8
    rec = np.empty((max_rec, 6))
    nrec = 0
    rec[nrec, 0] = x
    rec[nrec, 1:] = y
    nrec += 1
    k1 = np.empty(5)
    k2 = np.empty(5)
    k3 = np.empty(5)
    k4 = np.empty(5)
    reason = 5
    step = 0
    while x <= 1.4:
        bad = False
        for k in range(4):
            if np.isnan(y[k]) or y[k] < -1e-6:
                bad = True
        if bad:
            reason = 6
            break
        tau, beta, ok = _rhs_nb(y, rows1, rows2, k1)
        if not ok:
            reason = 4 if tau < 0 and beta < 0 else 2
            break
        if tau <= tol:
            reason = 0
            break
        if y[2] <= tol:
            reason = 1
            break
        if beta + tau <= tol:
            reason = 2
            break
        _, _, ok2 = _rhs_nb(y + 0.5 * h * k1, rows1, rows2, k2)
        if ok2:
            _, _, ok3 = _rhs_nb(y + 0.5 * h * k2, rows1, rows2, k3)
        else:
            ok3 = False
        if ok3:
            _, _, ok4 = _rhs_nb(y + h * k3, rows1, rows2, k4)
        else:
            ok4 = False
        if not (ok2 and ok3 and ok4):
            reason = 3
            break
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        x += h
        step += 1
        if step % record_every == 0:
            rec[nrec, 0] = x
            rec[nrec, 1:] = y
            nrec += 1
    rec[nrec, 0] = x
    rec[nrec, 1:] = y
    nrec += 1
    return rec[:nrec], reason


_REASONS = {
    0: "tau<=0",
    1: "y2<=0",
    2: "beta+tau<=0",
    3: "singular-within-step",
    4: "s<=0",
    5: "x-overflow",
}


@dataclass
class OdeSolution:
    """Trajectory grid plus the termination point and implied bound."""

    xs: np.ndarray
    ys: np.ndarray            # columns y0..y3
    hopped: np.ndarray
    x_hat: float
    hop_fraction: float
    implied_bound: float
    termination: str
    step: float
    x0: float
    x_hat_halfstep: float | None = None

    @property
    def halfstep_gap(self) -> float | None:
        if self.x_hat_halfstep is None:
            return None
        return abs(self.x_hat - self.x_hat_halfstep)

    def interpolate(self, x):
        """Linear interpolation of (y0..y3, hopped) at points x."""
        x = np.asarray(x, dtype=float)
        cols = [np.interp(x, self.xs, self.ys[:, k]) for k in range(4)]
        cols.append(np.interp(x, self.xs, self.hopped))
        return np.stack(cols, axis=-1)


def _run(step, x0, record_every):
    rec, reason = _integrate_nb(step, x0, ROWS_DEG1, ROWS_DEG2,
                                record_every, TOL)
    if reason == 6:
        raise OdeStepFailure("NaN or negative population during integration")
    return rec, _REASONS[reason]


def solve(step: float = 1e-6, x0: float = 1e-3, record_every: int = 1000,
          richardson: bool = True) -> OdeSolution:
    """Integrate from the seeded start until the first termination condition.

    The exact start (all vertices full) makes the mixture weights 0/0, so
    the trajectory is seeded at x0 on the early invariant line
    y = (x0, 0, x0, 1 - 2 x0), hopped = x0: every early step hops from the
    single degree-1 vertex into a full neighbourhood. With richardson=True
    the run is repeated at step/2 and the termination points compared.
    """
    if step <= 0 or not 0 < x0 < 0.5:
        raise ValueError("need step > 0 and x0 in (0, 0.5)")
    rec, reason = _run(step, x0, record_every)
    x_hat = float(rec[-1, 0])
    hop_fraction = float(rec[-1, 5])
    sol = OdeSolution(
        xs=rec[:, 0].copy(),
        ys=rec[:, 1:5].copy(),
        hopped=rec[:, 5].copy(),
        x_hat=x_hat,
        hop_fraction=hop_fraction,
        implied_bound=1.0 - hop_fraction,
        termination=reason,
        step=step,
        x0=x0,
    )
    if richardson:
        rec_half, _ = _run(step / 2.0, x0, record_every * 2)
        sol.x_hat_halfstep = float(rec_half[-1, 0])
    return sol
