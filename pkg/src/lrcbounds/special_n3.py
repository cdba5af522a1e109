"""Binary LRCs with groups of size 2 and 3, via mixed-alphabet LP bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from lrcbounds.lp_bounds import default_r_opt, lp_first


@dataclass(frozen=True)
class MixedAlphabetSpec:
    """Outer code over Q^t x Q'^(l-t); each coordinate adds beta (beta') to the distance."""

    size: int
    size_prime: int
    beta: float
    beta_prime: float
    tau: float

    def __post_init__(self):
        if self.beta <= 0 or self.beta_prime <= 0:
            raise ValueError("distance weights must be positive")
        if not 0 <= self.tau <= 1:
            raise ValueError("tau outside [0, 1]")
        if self.size < 2 or self.size_prime < 2:
            raise ValueError("alphabets need at least two symbols")


@dataclass(frozen=True)
class SweepReport:
    grid: tuple
    values: tuple
    argmax: float
    best: float


N3_SPEC = dict(size=2, size_prime=4, beta=1.0, beta_prime=2 / 3)


def n2_bound(q: int, delta: float, r_opt=None) -> float:
    """Groups of size 2 halve the rate: (1/2) R_opt(delta)."""
    r_opt = r_opt or default_r_opt(q)
    if delta >= (q - 1) / q:
        return 0.0
    return 0.5 * float(r_opt(delta))


def bhl_mixed_bound(spec: MixedAlphabetSpec, delta: float, points: int = 2001) -> float:
    """log2 |C| / l bound for a mixed-alphabet code with weighted relative distance delta.

    Minimizes tau R_Q(theta) log|Q| + (1-tau) R_Q'(theta') log|Q'| over
    tau beta theta + (1-tau) beta' theta' = delta, with theta, theta' in
    [0, 1], using the first LP bound for each alphabet.
    """
    a, b = spec.size, spec.size_prime
    la, lb = math.log2(a), math.log2(b)
    t = spec.tau
    if delta <= 0:
        return t * la + (1 - t) * lb
    if t == 0:
        return lb * lp_first(b, min(delta / spec.beta_prime, 1.0))
    if t == 1:
        return la * lp_first(a, min(delta / spec.beta, 1.0))
    # theta ranges over values that keep theta' inside [0, 1]
    lo = max(0.0, (delta - (1 - t) * spec.beta_prime) / (t * spec.beta))
    hi = min(1.0, delta / (t * spec.beta))
    if lo > hi:
        return 0.0

    def f(theta):
        theta = np.asarray(theta, dtype=float)
        other = np.clip((delta - t * spec.beta * theta) / ((1 - t) * spec.beta_prime), 0.0, 1.0)
        return t * la * lp_first(a, theta) + (1 - t) * lb * lp_first(b, other)

    grid = np.linspace(lo, hi, points)
    vals = f(grid)
    i = int(np.argmin(vals))
    best = float(vals[i])
    left, right = grid[max(i - 1, 0)], grid[min(i + 1, points - 1)]
    if right > left:
        res = minimize_scalar(lambda x: float(f(x)), bounds=(left, right), method="bounded",
                              options={"xatol": 1e-12})
        best = min(best, float(res.fun))
    return max(best, 0.0)


def n3_bound(delta: float) -> float:
    """(2/3) R_LP;4(3 delta / 2), with the first q = 4 LP bound."""
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    return (2 / 3) * lp_first(4, min(1.5 * delta, 1.0))


def n3_tau_sweep(delta: float, tau_grid=None) -> SweepReport:
    """Per-inner-symbol mixed-alphabet bound against the repetition-code fraction tau.

    Outer F2 coordinates carry the [3,1,3] repetition code and outer F4
    coordinates the [3,2,2] parity code, so the outer bound is divided by 3.
    """
    tau_grid = np.linspace(0.0, 1.0, 101) if tau_grid is None else np.asarray(tau_grid, float)
    vals = np.array([bhl_mixed_bound(MixedAlphabetSpec(tau=float(t), **N3_SPEC), delta) / 3
                     for t in tau_grid])
    i = int(np.argmax(vals))
    return SweepReport(tuple(tau_grid), tuple(vals), float(tau_grid[i]), float(vals[i]))


def sigma_expression(delta: float, sigma):
    """(2(1+sigma)/3) R_LP;4(3 delta / (2(1+sigma))) - sigma."""
    s = np.asarray(sigma, dtype=float)
    return 2 * (1 + s) / 3 * lp_first(4, np.minimum(1.5 * delta / (1 + s), 1.0)) - s


def n3_sigma_sweep(delta: float, sigma_grid=None) -> SweepReport:
    """Bound after converting size-2 groups into parity groups, against their share sigma."""
    sigma_grid = np.linspace(0.0, 1.0, 101) if sigma_grid is None else np.asarray(sigma_grid, float)
    vals = np.atleast_1d(sigma_expression(delta, sigma_grid))
    i = int(np.argmax(vals))
    return SweepReport(tuple(sigma_grid), tuple(vals), float(sigma_grid[i]), float(vals[i]))
