"""Chernoff rate function, ball-growth exponents and the lambda function."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import logsumexp

from lrcbounds.core_math import WeightEnumerator, parity_weight_enumerator, pq_values

BISECT_STEPS = 56  # interval width 2**-56 < 1e-14 on [0, 1]


@dataclass(frozen=True)
class FiniteDistribution:
    support: tuple
    probs: tuple

    def __post_init__(self):
        if len(self.support) != len(self.probs) or not self.support:
            raise ValueError("support and probabilities must be nonempty and aligned")
        if len(set(self.support)) != len(self.support):
            raise ValueError("support points must be distinct")
        if any(p <= 0 for p in self.probs):
            raise ValueError("probabilities must be positive")
        if abs(sum(self.probs) - 1) > 1e-12:
            raise ValueError("probabilities must sum to 1")

    @classmethod
    def from_arrays(cls, support, probs):
        """Build from arrays, dropping zero-probability points and renormalizing."""
        pairs = [(float(x), float(p)) for x, p in zip(support, probs) if p > 0]
        total = sum(p for _, p in pairs)
        return cls(tuple(x for x, _ in pairs), tuple(p / total for _, p in pairs))

    @property
    def mean(self) -> float:
        return float(np.dot(self.support, self.probs))


@dataclass(frozen=True)
class LambdaEval:
    q: int
    n: int
    omega: float
    value: float
    z: float
    root_residual: float


def _argmin_logz(f, left=-60.0):
    """Minimize a convex function of t = ln z over t <= 0.

    Returns (t, f(t)). The left end is pushed out while the minimizer sits
    against it, which is enough for the posynomials used here.
    """
    while True:
        res = minimize_scalar(f, bounds=(left, 0.0), method="bounded",
                              options={"xatol": 1e-13, "maxiter": 500})
        t, val = float(res.x), float(res.fun)
        f0 = float(f(0.0))
        if f0 <= val:
            return 0.0, f0
        if t - left > 1e-3 * abs(left) or left < -1e4:
            return t, val
        left *= 2


def gamma_rate(dist: FiniteDistribution, u: float) -> float:
    """gamma(u) = inf over z in (0, 1] of z^{-u} E[z^X]."""
    x = np.asarray(dist.support, dtype=float)
    lp = np.log(np.asarray(dist.probs, dtype=float))
    xmin = float(x.min())
    if u < xmin:
        return 0.0
    if u == xmin:
        return float(np.exp(lp[x == xmin][0]))
    if u >= dist.mean:
        return 1.0
    _, val = _argmin_logz(lambda t: float(logsumexp(lp + t * (x - u))))
    return float(min(1.0, math.exp(val)))


def _zinv_vec(q, n, z):
    pv, qv = pq_values(q, n, z)
    return z * pv / qv


def zeta_inv(q: int, n: int, z):
    """Closed-form inverse z*P_n(z)/Q_n(z) of the minimizer map."""
    if n < 1:
        raise ValueError("n must be positive")
    out = _zinv_vec(q, n, np.asarray(z, dtype=float))
    return float(out) if np.ndim(out) == 0 else out


def _zeta_vec(q, n, omega):
    """Vectorized bisection for the root of omega*Q_n - z*P_n on [0, 1]."""
    w = np.asarray(omega, dtype=float)
    lo = np.zeros(np.broadcast(w, np.asarray(n)).shape)
    hi = np.ones_like(lo)
    for _ in range(BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        below = _zinv_vec(q, n, mid) < w
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    return 0.5 * (lo + hi)


def zeta(q: int, n: int, omega: float) -> float:
    """Minimizer z = zeta_n(omega) of the lambda objective."""
    if n == 1:
        raise NotImplementedError("zeta is undefined for n = 1")
    if n < 1:
        raise ValueError("n must be positive")
    th = (q - 1) / q
    if not 0 <= omega <= th:
        raise ValueError(f"omega={omega} outside [0, {th}]")
    if omega == 0:
        return 0.0
    if omega == th:
        return 1.0
    return float(_zeta_vec(q, n, omega))


def lambda_values(q: int, n, omega):
    """Vectorized lambda_q(omega, n); n and omega broadcast together."""
    w = np.asarray(omega, dtype=float)
    nn = np.asarray(n)
    th = (q - 1) / q
    wc = np.clip(w, 1e-300, th)
    z = _zeta_vec(q, nn, wc)
    _, qv = pq_values(q, nn, z)
    with np.errstate(divide="ignore", invalid="ignore"):
        v = (-wc * np.log(z) + np.log(qv) / nn) / math.log(q) - 1.0 / nn
    cap = (nn - 1) / nn
    v = np.where(w >= th, cap, v)
    v = np.where((w <= 0) | (nn == 1), 0.0, v)
    v = np.clip(v, 0.0, cap)
    return float(v) if v.ndim == 0 else v


def lambda_growth(q: int, n: int, omega: float) -> LambdaEval:
    """lambda_q(omega, n), the ball-growth exponent inside products of parity codes."""
    if omega < 0:
        raise ValueError("omega must be nonnegative")
    if n < 1:
        raise ValueError("n must be positive")
    th = (q - 1) / q
    if omega == 0:
        return LambdaEval(q, n, omega, 0.0, 0.0, 0.0)
    if n == 1:
        return LambdaEval(q, n, omega, 0.0, 1.0, 0.0)
    if omega >= th:
        return LambdaEval(q, n, omega, (n - 1) / n, 1.0, 0.0)
    z = float(_zeta_vec(q, n, omega))
    pv, qv = pq_values(q, n, z)
    value = (-omega * math.log(z) + math.log(qv) / n) / math.log(q) - 1 / n
    value = min(max(value, 0.0), (n - 1) / n)
    return LambdaEval(q, n, omega, value, z, abs(omega * qv - z * pv))


def max_parity_weight(q: int, n: int) -> int:
    return n - 1 if (q == 2 and n % 2 == 1) else n


def lambda_star(q: int, n: int, omega: float) -> float:
    """Upper-tail exponent (1/n) log_q inf_z z^{n omega} W(1/z) for the parity code."""
    if n < 2:
        raise ValueError("n must be at least 2")
    th = (q - 1) / q
    wmax = max_parity_weight(q, n)
    if not th < omega < wmax / n:
        raise ValueError(f"omega={omega} outside ({th}, {wmax / n})")
    lc = parity_weight_enumerator(q, n).log_coeffs()
    i = np.arange(len(lc))
    _, val = _argmin_logz(lambda t: n * omega * t + float(logsumexp(lc - i * t)))
    return val / (n * math.log(q))


def ball_growth_alpha(enum: WeightEnumerator, omega: float) -> float:
    """log_q of alpha(omega) = inf over z in (0, 1] of z^{-N omega} W(z)."""
    if omega < 0:
        raise ValueError("omega must be nonnegative")
    lc = enum.log_coeffs()
    big_n = enum.length
    i = np.arange(len(lc))
    if omega == 0:
        return float(lc[0]) / math.log(enum.q)
    _, val = _argmin_logz(lambda t: -big_n * omega * t + float(logsumexp(lc + i * t)))
    return val / math.log(enum.q)
