"""Rate bound under an average repair-group-size constraint mu."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from lrcbounds.disjoint_bounds import r0_lower
from lrcbounds.large_deviations import BISECT_STEPS, _zinv_vec

VARIANTS = ("per_group", "per_coordinate")


@dataclass(frozen=True)
class PiTheta:
    """A (pi, theta) pair indexed by group size s = 1..n."""

    pi: tuple
    theta: tuple

    @property
    def n(self) -> int:
        return len(self.pi)

    @property
    def support(self) -> tuple:
        return tuple(s + 1 for s, p in enumerate(self.pi) if p > 0)

    def check(self, mu: float, omega: float, variant: str = "per_group") -> bool:
        pi = np.asarray(self.pi)
        sizes = np.arange(1, self.n + 1)
        if np.any(pi < 0) or abs(pi.sum() - 1) > 1e-12:
            return False
        if variant == "per_group" and pi @ (1 / sizes) < 1 / mu - 1e-12:
            return False
        if variant == "per_coordinate" and pi @ sizes > mu + 1e-12:
            return False
        return abs(pi @ np.asarray(self.theta) - omega) <= 1e-10


def mix_weight(mu, variant: str = "per_group"):
    """(k, pi) with k = floor(mu) and pi the weight on size k."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    mu = np.asarray(mu, dtype=float)
    k = np.floor(mu)
    if variant == "per_group":
        pi = k * (k + 1) / mu - k
    else:
        pi = k + 1 - mu
    return k.astype(int), np.clip(pi, 0.0, 1.0)


def _common_root(q, k, pi, omega):
    """Bisection for pi*zinv_k(z) + (1-pi)*zinv_{k+1}(z) = omega on [0, 1].

    The left side is increasing in z (each zinv is), so bisection is safe;
    when omega exceeds its value at z = 1 the root saturates at 1.
    """
    lo = np.zeros(np.broadcast(k, pi, omega).shape)
    hi = np.ones_like(lo)
    for _ in range(BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        val = pi * _zinv_vec(q, k, mid) + (1 - pi) * _zinv_vec(q, k + 1, mid)
        below = val < omega
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def r0_bar_values(q: int, mu, omega, variant: str = "per_group", with_root: bool = False):
    """Vectorized average-group-size bound; mu and omega broadcast together."""
    mu = np.asarray(mu, dtype=float)
    w = np.asarray(omega, dtype=float)
    k, pi = mix_weight(mu, variant)
    k, pi, w = np.broadcast_arrays(k, pi, w)
    z = _common_root(q, k, pi, w)
    t1 = _zinv_vec(q, k, z)
    t2 = _zinv_vec(q, k + 1, z)
    out = pi * r0_lower(q, k, t1) + (1 - pi) * r0_lower(q, k + 1, t2)
    out = np.where(w >= (q - 1) / q, 0.0, out)
    # an integral mu puts all weight on size k, with theta_k = omega
    integral = pi >= 1.0
    out = np.where(integral, r0_lower(q, k, w), out)
    out = np.where((k == 1) & integral & (w > 0), 0.0, out)
    if with_root:
        return out, z, k, pi
    return out


def wzl_r0_bar(q: int, n: int, mu: float, omega: float, variant: str = "per_group") -> float:
    """max over pi of min over theta of sum_s pi_s R0(theta_s, s), via the two-point recipe."""
    if not 1 <= mu <= n:
        raise ValueError(f"mu={mu} outside [1, {n}]")
    if omega < 0:
        raise ValueError("omega must be nonnegative")
    return float(r0_bar_values(q, mu, omega, variant))


def _simplex_points(n: int, steps: int):
    """All pi on the n-simplex with coordinates in multiples of 1/steps."""
    for cuts in itertools.combinations(range(steps + n - 1), n - 1):
        prev, parts = -1, []
        for c in cuts:
            parts.append(c - prev - 1)
            prev = c
        parts.append(steps + n - 2 - prev)
        yield parts


def _pi_candidates(n: int, pair_steps: int, full_steps: int):
    """Fine grid on every edge of the simplex plus a coarser full-simplex grid."""
    rows = []
    for a, b in itertools.combinations(range(n), 2):
        t = np.arange(pair_steps + 1) / pair_steps
        block = np.zeros((len(t), n))
        block[:, a], block[:, b] = t, 1 - t
        rows.append(block)
    rows.append(np.array(list(_simplex_points(n, full_steps)), dtype=float) / full_steps)
    return np.unique(np.vstack(rows), axis=0)


def wzl_direct_oracle(q: int, n: int, mu: float, omega: float, variant: str = "per_group",
                      pair_steps: int = 200, full_steps: int = 20, full: bool = False):
    """Brute-force max over pi for the average-group-size bound.

    pi runs over a grid of the simplex (step 1/pair_steps along every edge, and
    1/full_steps over the whole simplex), filtered by the size constraint. For
    each pi the inner minimum uses the common-z characterization
    theta_s = zinv_s(z*).
    """
    if n > 6:
        raise NotImplementedError("oracle is limited to n <= 6")
    if not 1 <= mu <= n:
        raise ValueError(f"mu={mu} outside [1, {n}]")
    pis = _pi_candidates(n, pair_steps, full_steps)
    sizes = np.arange(1, n + 1)
    if variant == "per_group":
        feasible = pis @ (1 / sizes) >= 1 / mu - 1e-12
    elif variant == "per_coordinate":
        feasible = pis @ sizes <= mu + 1e-12
    else:
        raise ValueError(f"unknown variant {variant!r}")
    pis = pis[feasible]
    if omega >= (q - 1) / q:
        return (0.0, None) if full else 0.0
    lo = np.zeros(len(pis))
    hi = np.ones(len(pis))
    inv = lambda z: _zinv_vec(q, sizes[None, :], z[:, None])
    for _ in range(BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        below = (pis * inv(mid)).sum(axis=1) < omega
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    z = 0.5 * (lo + hi)
    theta = inv(z)
    # pi_1 > 0 with every other theta at its cap leaves slack for theta_1,
    # which costs nothing since R0(., 1) = 0
    vals = (pis * r0_lower(q, sizes[None, :], theta)).sum(axis=1)
    i = int(np.argmax(vals))
    if full:
        return float(vals[i]), PiTheta(tuple(pis[i]), tuple(theta[i]))
    return float(vals[i])
