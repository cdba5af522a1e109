"""Finite-length checks: exact ball counts, enumerator powers, Chernoff and Cramer."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from lrcbounds.core_math import WeightEnumerator, parity_weight_enumerator
from lrcbounds.large_deviations import FiniteDistribution, gamma_rate, lambda_growth

EXACT_LIMIT = 64


@dataclass(frozen=True)
class ConvergenceReport:
    q: int
    n: int
    omega: float
    ells: tuple
    exponents: tuple
    asymptote: float
    max_violation: float

    @property
    def final_gap(self) -> float:
        return self.asymptote - self.exponents[-1]


def ball_count(enum: WeightEnumerator, radius: int) -> int:
    """Number of codewords of weight at most radius."""
    if enum.log_domain:
        raise TypeError("log-domain enumerator; use log_ball_count")
    if radius < 0:
        return 0
    return sum(enum.coeffs[: radius + 1])


def log_ball_count(enum: WeightEnumerator, radius: int) -> float:
    """Natural log of the ball count, for either mode."""
    if not enum.log_domain:
        return math.log(ball_count(enum, radius))
    lc = enum.log_coeffs()[: radius + 1]
    return float(np.logaddexp.reduce(lc))


def _log_convolve(a: np.ndarray, b: np.ndarray, max_degree: int | None) -> np.ndarray:
    size = len(a) + len(b) - 1
    if max_degree is not None:
        size = min(size, max_degree + 1)
    out = np.full(size, -np.inf)
    if len(a) > len(b):
        a, b = b, a
    for i, ai in enumerate(a):
        if i >= size or ai == -np.inf:
            continue
        m = min(len(b), size - i)
        out[i:i + m] = np.logaddexp(out[i:i + m], ai + b[:m])
    return out


def _exact_convolve(a, b, max_degree=None):
    size = len(a) + len(b) - 1
    if max_degree is not None:
        size = min(size, max_degree + 1)
    out = [0] * size
    for i, x in enumerate(a):
        if x and i < size:
            for j, y in enumerate(b[: size - i]):
                out[i + j] += x * y
    return out


def power_enumerator(enum: WeightEnumerator, ell: int,
                     max_degree: int | None = None) -> WeightEnumerator:
    """Enumerator of the ell-fold Cartesian product (convolution power).

    Exact integers while ell * N <= 64, log domain beyond. ``max_degree``
    truncates every intermediate product; coefficients up to that degree stay
    exact because all coefficients are nonnegative.
    """
    if ell < 1:
        raise ValueError("ell must be positive")
    exact = not enum.log_domain and ell * enum.length <= EXACT_LIMIT
    if exact:
        mul = lambda a, b: _exact_convolve(a, b, max_degree)
        base = list(enum.coeffs)
        one = [1]
    else:
        mul = lambda a, b: _log_convolve(a, b, max_degree)
        base = enum.log_coeffs()
        one = np.zeros(1)
    result, square, e = one, base, ell
    while e:
        if e & 1:
            result = mul(result, square)
        e >>= 1
        if e:
            square = mul(square, square)
    if exact:
        return WeightEnumerator(enum.q, tuple(result))
    return WeightEnumerator(enum.q, tuple(result), True)


def cramer_convergence(q: int, n: int, omega: float, ells) -> ConvergenceReport:
    """Exact exponents (1/(ell n)) log_q |ball of radius floor(omega ell n)| against lambda."""
    ells = tuple(sorted(int(e) for e in ells))
    if not ells or ells[-1] > 4096:
        raise ValueError("ell values must be in [1, 4096]")
    base = parity_weight_enumerator(q, n)
    radius = lambda e: math.floor(omega * e * n + 1e-9)
    top = radius(ells[-1])
    lam = lambda_growth(q, n, omega).value
    exps = []
    # powers of two share one truncated squaring chain; others are built directly
    chain = {1: base if ells[-1] * n <= EXACT_LIMIT else base.to_log()}
    e = 1
    while 2 * e <= ells[-1]:
        prev = chain[e]
        chain[2 * e] = WeightEnumerator(
            q, tuple(_log_convolve(prev.log_coeffs(), prev.log_coeffs(), top)), True)
        e *= 2
    for e in ells:
        p = chain.get(e) or power_enumerator(base, e, max_degree=top)
        exps.append(log_ball_count(p, radius(e)) / (e * n * math.log(q)))
    violation = max(0.0, max(x - lam for x in exps))
    return ConvergenceReport(q, n, omega, ells, tuple(exps), lam, violation)


def _as_fraction(x: float) -> Fraction:
    f = Fraction(x).limit_denominator(10**6)
    if float(f) != float(x):
        raise ValueError(f"support value {x} is not a small rational")
    return f


def chernoff_check(dist: FiniteDistribution, u: float, ell: int):
    """Exact (1/ell) ln P(mean of ell draws <= u) and the bound ln gamma(u), in nats."""
    if ell < 1:
        raise ValueError("ell must be positive")
    xs = [_as_fraction(x) for x in dist.support]
    den = math.lcm(*[x.denominator for x in xs])
    ints = [int(x * den) for x in xs]
    low = min(ints)
    ints = [a - low for a in ints]
    probs = [Fraction(p) for p in dist.probs]
    pden = math.lcm(*[p.denominator for p in probs])
    pnum = [int(p * pden) for p in probs]
    step = [0] * (max(ints) + 1)
    for a, w in zip(ints, pnum):
        step[a] += w
    pmf = [1]
    for _ in range(ell):
        pmf = _exact_convolve(pmf, step)
    # sum of ell draws <= u*ell  <=>  shifted integer sum <= (u*den - low)*ell
    cut = math.floor((Fraction(u).limit_denominator(10**9) * den - low) * ell)
    gamma = gamma_rate(dist, u)
    bound = math.log(gamma) if gamma > 0 else -math.inf
    tail = sum(pmf[: cut + 1]) if cut >= 0 else 0
    if tail == 0:
        return -math.inf, bound
    exact = (math.log(tail) - ell * math.log(pden)) / ell
    return exact, bound
