"""Linear-programming rate bounds used as plug-ins, plus a convex-envelope helper."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from lrcbounds.core_math import entropy_q


@dataclass(frozen=True)
class RateBoundFn:
    """A named, vectorized map delta -> rate upper bound."""

    name: str
    q: int
    evaluate: Callable = field(repr=False)

    def __call__(self, delta):
        out = self.evaluate(np.asarray(delta, dtype=float))
        return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class CurveTable:
    name: str
    grid: tuple
    values: tuple

    def __post_init__(self):
        if len(self.grid) != len(self.values):
            raise ValueError("grid and values differ in length")
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid must be strictly increasing")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("values must be finite")


def lp_first(q: int, delta):
    """First LP bound (binary MRRW / q-ary Aaltonen), vectorized."""
    d = np.asarray(delta, dtype=float)
    th = (q - 1) / q
    dd = np.clip(d, 0.0, th)
    arg = (q - 1 - (q - 2) * dd - 2 * np.sqrt((q - 1) * dd * (1 - dd))) / q
    out = np.where(d >= th, 0.0, entropy_q(q, np.clip(arg, 0.0, 1.0)))
    return float(out) if out.ndim == 0 else out


def _h(x):
    return entropy_q(2, (1 - np.sqrt(np.clip(1 - x, 0.0, 1.0))) / 2)


def lp_second_binary(delta, points: int = 801, zooms: int = 3):
    """Second binary MRRW bound, min over u of 1 + h(u^2) - h(u^2 + 2du + 2d).

    Coarse grid in u followed by a few zoomed grids around the best point;
    vectorized over delta.
    """
    d = np.atleast_1d(np.asarray(delta, dtype=float))
    out = np.zeros_like(d)
    live = d < 0.5
    dl = np.clip(d[live], 0.0, 0.5)[:, None]
    if dl.size:
        top = 1 - 2 * dl
        s = np.linspace(0.0, 1.0, points)[None, :]

        def objective(u):
            u = np.clip(u, 0.0, top)
            x2 = np.minimum(u * u + 2 * dl * u + 2 * dl, 1.0)
            return 1 + _h(u * u) - _h(x2)

        u = top * s
        vals = objective(u)
        best = vals.min(axis=1)
        ubest = u[np.arange(len(u)), vals.argmin(axis=1)][:, None]
        width = top / (points - 1)
        fine = np.linspace(-1.0, 1.0, 41)[None, :]
        for _ in range(zooms):
            u = np.clip(ubest + width * fine, 0.0, top)
            vals = objective(u)
            i = vals.argmin(axis=1)
            ubest = u[np.arange(len(u)), i][:, None]
            best = np.minimum(best, vals.min(axis=1))
            width = width / 20
        out[live] = np.clip(best, 0.0, 1.0)
    return float(out[0]) if np.ndim(delta) == 0 else out


def lp_rate_bound(q: int, delta: float, variant: str = "first") -> float:
    """First or (binary only) second linear-programming rate bound at delta."""
    if variant == "first":
        return lp_first(q, delta)
    if variant == "second":
        if q != 2:
            raise NotImplementedError("the second LP bound is implemented for q = 2 only")
        return lp_second_binary(delta)
    raise ValueError(f"unknown variant {variant!r}")


def default_r_opt(q: int) -> RateBoundFn:
    """min(first, second) MRRW for q = 2, Aaltonen's first bound otherwise."""
    if q == 2:
        return RateBoundFn("mrrw", 2, lambda d: np.minimum(lp_first(2, d), lp_second_binary(d)))
    return RateBoundFn("aaltonen", q, lambda d: lp_first(q, d))


def lp_constant_weight_bound(q: int, delta, omega, monotone: bool = False):
    """Binary constant-weight MRRW bound on R_opt(delta, omega).

    H_2((1 - sqrt(1 - u^2))/2) with u = sqrt(4w(1-w) - d(2-d)) - d, and 0
    once u <= 0 (this covers omega < delta/2). Vectorized over omega.
    """
    if q != 2:
        raise NotImplementedError("constant-weight bound is implemented for q = 2 only")
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0) or np.any(w > 0.5 + 1e-15):
        raise ValueError("omega outside [0, 1/2]")
    if monotone:
        w = np.atleast_1d(w)
        grids = w[:, None] + (0.5 - w[:, None]) * np.linspace(0, 1, 401)[None, :]
        out = lp_constant_weight_bound(2, delta, grids).min(axis=1)
        return float(out[0]) if np.ndim(omega) == 0 else out
    s = 4 * w * (1 - w) - delta * (2 - delta)
    u = np.clip(np.sqrt(np.clip(s, 0.0, None)) - delta, 0.0, 1.0)
    val = entropy_q(2, (1 - np.sqrt(1 - u * u)) / 2)
    out = np.where((s <= 0) | (u <= 0) | (w < delta / 2), 0.0, val)
    return float(out) if out.ndim == 0 else out


def singleton_plugin(delta):
    """The Singleton plug-in delta -> 1 - delta."""
    return 1 - np.asarray(delta, dtype=float) if np.ndim(delta) else 1.0 - float(delta)


def singleton_r_opt(q: int = 2) -> RateBoundFn:
    return RateBoundFn("singleton", q, lambda d: np.clip(1 - d, 0.0, 1.0))


def lower_convex_envelope(curve: CurveTable) -> CurveTable:
    """Greatest convex minorant of a sampled curve, evaluated on its own grid."""
    x = np.asarray(curve.grid, dtype=float)
    y = np.asarray(curve.values, dtype=float)
    if len(x) < 2:
        raise ValueError("need at least two points")
    hull = []
    for i in range(len(x)):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            cross = (x[b] - x[a]) * (y[i] - y[a]) - (y[b] - y[a]) * (x[i] - x[a])
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(i)
    env = np.interp(x, x[hull], y[hull])
    return CurveTable(curve.name, tuple(x), tuple(np.minimum(env, y)))
