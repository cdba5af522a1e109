"""Bounds for linearly recoverable LRCs whose repair groups may intersect."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from lrcbounds.core_math import pq_values
from lrcbounds.disjoint_bounds import (
    OptimizerState,
    _default_cw,
    chord_minimum,
    min_over_omega,
    r0_lower,
)
from lrcbounds.lp_bounds import default_r_opt
from lrcbounds.wzl_bounds import r0_bar_values


@dataclass(frozen=True)
class NuSweep:
    nu: tuple
    values: tuple
    nu_star: float
    best: float
    at_zero: float
    at_end: float


def nu_max(n: int) -> float:
    return (n - 1) / (n + 1)


def mu_of_nu(n: int, nu, printed: bool = False):
    """Average group size left after shortening a fraction nu of coordinates."""
    nu = np.asarray(nu, dtype=float)
    ratio = (1 + nu) / (1 - nu) if printed else (1 - nu) / (1 + nu)
    return np.clip(ratio * n, 1.0, n)


def _hat_objective(q, n, omega, nu, printed=False):
    nu = np.asarray(nu, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        w = np.where(nu < 1, omega / (1 - nu), np.inf)
    return nu + (1 - nu) * r0_bar_values(q, mu_of_nu(n, nu, printed), w)


def r0_hat_values(q: int, n: int, omega, points: int = 2001, zooms: int = 3):
    """Vectorized max over nu in [0, (n-1)/(n+1)] of nu + (1-nu) R0bar(omega/(1-nu), n, mu(nu))."""
    w = np.atleast_1d(np.asarray(omega, dtype=float))[:, None]
    top = nu_max(n)
    nu = np.linspace(0.0, top, points)[None, :]
    vals = _hat_objective(q, n, w, nu)
    best = vals.max(axis=1)
    centre = nu[0, vals.argmax(axis=1)]
    width = top / (points - 1)
    local = np.linspace(-1.0, 1.0, 21)[None, :]
    for _ in range(zooms):
        nn = np.clip(centre[:, None] + width * local, 0.0, top)
        vv = _hat_objective(q, n, w, nn)
        centre = nn[np.arange(len(nn)), vv.argmax(axis=1)]
        best = np.maximum(best, vv.max(axis=1))
        width /= 10
    return float(best[0]) if np.ndim(omega) == 0 else best


def r0_hat(q: int, n: int, omega: float, points: int = 2001) -> float:
    """Lower bound for non-disjoint repair groups, maximized over the shortened fraction nu."""
    if omega < 0:
        raise ValueError("omega must be nonnegative")
    return float(r0_hat_values(q, n, omega, points=points))


def nu_sweep(q: int, n: int, omega: float, points: int = 2001) -> NuSweep:
    nu = np.linspace(0.0, nu_max(n), points)
    vals = _hat_objective(q, n, omega, nu)
    i = int(np.argmax(vals))
    return NuSweep(tuple(nu), tuple(vals), float(nu[i]), float(vals[i]),
                   float(vals[0]), float(vals[-1]))


def r_sp_hat(q: int, n: int, delta: float, points: int = 2001) -> float:
    """Sphere-packing counterpart r0_hat(delta/2)."""
    return r0_hat(q, n, delta / 2, points=points)


def r1_hat(q: int, n: int, delta: float, r_opt=None, points: int = 1001,
           nu_points: int = 201, full: bool = False):
    """inf of tau r0_hat(theta/2) + (1-tau) R_opt(theta') with tau theta + (1-tau) theta' = delta.

    Only a plain code bound may stand in for R_opt here, not r2_hat.
    """
    r_opt = r_opt or default_r_opt(q)
    top = (q - 1) / q
    if delta >= top:
        state = OptimizerState(0.0, delta, delta, 0.0)
        return state if full else 0.0
    first = lambda t: r0_hat_values(q, n, np.asarray(t) / 2, points=nu_points)
    state = chord_minimum(delta, first, r_opt, top, points=points)
    return state if full else state.value


def r2_hat(q: int, n: int, delta: float, r_opt_cw=None, points: int = 501,
           nu_points: int = 201, with_lp: bool = False) -> float:
    """min over omega in [delta/2, (q-1)/q] of r0_hat(omega) + R_opt(delta, omega).

    With ``with_lp`` the result is also capped by the plain LP bound.
    """
    r_opt_cw = r_opt_cw or _default_cw(q)
    if delta >= (q - 1) / q:
        return 0.0

    def objective(w):
        flat = r0_hat_values(q, n, w.ravel(), points=nu_points).reshape(w.shape)
        return flat + r_opt_cw(delta, w)

    val = float(min_over_omega(q, [delta / 2], objective, points=points)[0])
    if with_lp:
        val = min(val, float(default_r_opt(q)(delta)))
    return val


def r3_hat(q: int, n: int, delta: float, r_opt_cw=None, points: int = 401,
           omega_points: int = 1001, printed_mu: bool = False, full: bool = False):
    """max over nu of nu + (1-nu) min over omega of R0bar(omega, n, mu(nu)) + R_opt(delta/(1-nu), omega).

    ``printed_mu`` swaps in (1+nu)/(1-nu) n for the average size, clamped to n.
    """
    r_opt_cw = r_opt_cw or _default_cw(q)
    if delta >= (q - 1) / q:
        return (0.0, 0.0) if full else 0.0
    nu = np.linspace(0.0, nu_max(n), points)
    mu = mu_of_nu(n, nu, printed_mu)[:, None]
    dd = (delta / (1 - nu))[:, None]

    def objective(w):
        return r0_bar_values(q, mu, w) + r_opt_cw(np.minimum(dd, 1.0), w)

    inner = min_over_omega(q, delta / (2 - 2 * nu), objective, points=omega_points)
    vals = nu + (1 - nu) * inner
    i = int(np.argmax(vals))
    return (float(vals[i]), float(nu[i])) if full else float(vals[i])


def hat_derivative_diag(q: int, n: int, omega: float, nu: float) -> float:
    """Closed-form d/dnu of the r0_hat objective where mu(nu) is not an integer.

    (1 + k/n) log_q Q_{k+1}(z*) - (1 + (k+1)/n) log_q Q_k(z*), with k and z*
    from the two-point recipe at omega/(1-nu).
    """
    mu = float(mu_of_nu(n, nu))
    if abs(mu - round(mu)) < 1e-9:
        raise ValueError(f"mu(nu)={mu} is integral; the objective has a kink there")
    _, z, k, _ = r0_bar_values(q, mu, omega / (1 - nu), with_root=True)
    k, z = int(k), float(z)
    _, qk1 = pq_values(q, k + 1, z)
    _, qk = pq_values(q, k, z)
    lq = math.log(q)
    return (1 + k / n) * math.log(qk1) / lq - (1 + (k + 1) / n) * math.log(qk) / lq
