"""Entropy, parity-code weight enumerators and the P_n/Q_n pair."""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class WeightEnumerator:
    """Weight distribution W_0..W_N of a code.

    In exact mode ``coeffs`` holds Python ints. In log mode it holds natural
    logs of the coefficients (``-inf`` for zero entries).
    """

    q: int
    coeffs: tuple
    log_domain: bool = False

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("field size must be at least 2")
        if len(self.coeffs) == 0:
            raise ValueError("empty enumerator")
        if not self.log_domain:
            if any(c < 0 for c in self.coeffs):
                raise ValueError("negative coefficient")
            if self.coeffs[0] < 1:
                raise ValueError("W_0 must be at least 1")

    @property
    def length(self) -> int:
        return len(self.coeffs) - 1

    @property
    def dimension(self) -> float:
        """log_q of the total number of codewords."""
        if not self.log_domain:
            total = sum(self.coeffs)
            k = round(math.log(total, self.q))
            if self.q**k == total:
                return float(k)
            return math.log(total) / math.log(self.q)
        return float(np.logaddexp.reduce(np.asarray(self.coeffs))) / math.log(self.q)

    def log_coeffs(self) -> np.ndarray:
        if self.log_domain:
            return np.asarray(self.coeffs, dtype=float)
        return np.array([math.log(c) if c > 0 else -np.inf for c in self.coeffs])

    def to_log(self) -> "WeightEnumerator":
        if self.log_domain:
            return self
        return WeightEnumerator(self.q, tuple(self.log_coeffs()), True)

    def evaluate(self, z: float) -> float:
        if self.log_domain:
            lc = self.log_coeffs()
            if z == 0:
                return float(np.exp(lc[0]))
            i = np.arange(len(lc))
            return float(np.exp(np.logaddexp.reduce(lc + i * math.log(z))))
        return float(sum(c * z**i for i, c in enumerate(self.coeffs)))


@dataclass(frozen=True)
class PQEval:
    q: int
    n: int
    z: float
    p_value: float
    q_value: float


def entropy_q(q: int, x):
    """q-ary entropy H_q(x), vectorized, with 0 log 0 = 0."""
    if q < 2:
        raise ValueError("q must be at least 2")
    arr = np.asarray(x, dtype=float)
    if np.any((arr < 0) | (arr > 1)) or np.any(np.isnan(arr)):
        raise ValueError("entropy argument outside [0, 1]")
    out = np.zeros_like(arr)
    inner = (arr > 0) & (arr < 1)
    y = arr[inner]
    out[inner] = (y * math.log(q - 1) - y * np.log(y) - (1 - y) * np.log1p(-y)) / math.log(q)
    out[arr == 1] = math.log(q - 1) / math.log(q)
    return float(out) if out.ndim == 0 else out


def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _binom_powers(q: int, m: int, sign: int) -> list:
    # coefficients of (1 + sign*(q-1)^{[sign>0]} z)^m: (1+(q-1)z)^m or (1-z)^m
    if sign > 0:
        return [comb(m, i) * (q - 1) ** i for i in range(m + 1)]
    return [comb(m, i) * (-1) ** i for i in range(m + 1)]


def shortened_parity_enumerator(q: int, n: int, s: int) -> WeightEnumerator:
    """Enumerator of the length-n code with a single check on the first s coordinates.

    MacWilliams gives W(z) = (1/q)(1+(q-1)z)^{n-s} [(1+(q-1)z)^s + (q-1)(1-z)^s].
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 1 <= s <= n:
        raise ValueError(f"s={s} outside [1, {n}]")
    a = _binom_powers(q, s, +1)
    b = _binom_powers(q, s, -1)
    head = [x + (q - 1) * y for x, y in zip(a, b)]
    full = _poly_mul(_binom_powers(q, n - s, +1), head)
    assert all(c % q == 0 for c in full)
    return WeightEnumerator(q, tuple(c // q for c in full))


def parity_weight_enumerator(q: int, n: int) -> WeightEnumerator:
    """Weight distribution of the [n, n-1, 2] single-parity-check code."""
    return shortened_parity_enumerator(q, n, n)


def pq_values(q: int, n, z):
    """Vectorized (P_n(z), Q_n(z)); n may be an array."""
    z = np.asarray(z, dtype=float)
    a = 1 + (q - 1) * z
    b = 1 - z
    qv = a**n + (q - 1) * b**n
    pv = (q - 1) * (a ** (np.asarray(n) - 1) - b ** (np.asarray(n) - 1))
    return pv, qv


def pq_eval(q: int, n: int, z: float) -> PQEval:
    """Evaluate P_n and Q_n at z, with n*P_n equal to the derivative of Q_n."""
    if not 0 <= z <= 1:
        raise ValueError("z outside [0, 1]")
    if n < 1:
        raise ValueError("n must be positive")
    pv, qv = pq_values(q, n, z)
    return PQEval(q, n, float(z), float(pv), float(qv))
