import math
import time

import numpy as np
import pytest

from lrcbounds.core_math import WeightEnumerator, parity_weight_enumerator, shortened_parity_enumerator
from lrcbounds.large_deviations import FiniteDistribution
from lrcbounds.oracle import (
    ball_count,
    chernoff_check,
    cramer_convergence,
    log_ball_count,
    power_enumerator,
)


def test_ball_counts():
    t0 = time.perf_counter()
    assert ball_count(parity_weight_enumerator(2, 5), 2) == 11
    assert ball_count(shortened_parity_enumerator(2, 5, 2), 2) == 8
    assert ball_count(shortened_parity_enumerator(2, 5, 3), 2) == 7
    assert time.perf_counter() - t0 < 0.01
    assert ball_count(parity_weight_enumerator(2, 5), -1) == 0


def test_log_mode_rejects_exact_count():
    e = parity_weight_enumerator(2, 4).to_log()
    with pytest.raises(TypeError):
        ball_count(e, 2)
    assert log_ball_count(e, 2) == pytest.approx(math.log(7))


def test_power_basics():
    e = parity_weight_enumerator(2, 2)
    assert power_enumerator(e, 1).coeffs == e.coeffs
    assert power_enumerator(e, 2).coeffs == (1, 0, 2, 0, 1)
    p = power_enumerator(parity_weight_enumerator(3, 4), 5)
    assert sum(p.coeffs) == 3 ** (3 * 5)
    with pytest.raises(ValueError):
        power_enumerator(e, 0)


def test_power_truncation_is_exact_prefix():
    e = parity_weight_enumerator(3, 3)
    full = power_enumerator(e, 6)
    cut = power_enumerator(e, 6, max_degree=5)
    assert cut.coeffs == full.coeffs[:6]


@pytest.mark.parametrize("q,n", [(2, 4), (3, 3), (4, 5)])
def test_log_power_matches_exact(q, n):
    e = parity_weight_enumerator(q, n)
    exact = np.array(power_enumerator(e, 8).coeffs, dtype=float)
    logp = power_enumerator(e.to_log(), 8).log_coeffs()
    mask = exact > 0
    assert np.all(np.isneginf(logp[~mask]))
    assert np.allclose(np.exp(logp[mask] - np.log(exact[mask])), 1.0, rtol=1e-9)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_finite_exponents_below_lambda(q, n):
    ells = [1, 2, 4, 8, 16, 64, 256, 1024]
    for w in np.arange(0.05, (q - 1) / q, 0.05):
        rep = cramer_convergence(q, n, float(w), ells)
        assert rep.max_violation <= 1e-12, (q, n, w)


def test_gap_closes():
    rep = cramer_convergence(2, 4, 0.25, [16, 4096])
    assert rep.exponents[1] > rep.exponents[0]
    assert rep.final_gap < 0.01
    assert cramer_convergence(2, 4, 0.0, [8]).exponents == (0.0,)
    with pytest.raises(ValueError):
        cramer_convergence(2, 4, 0.25, [8192])


def test_non_power_of_two_lengths():
    rep = cramer_convergence(2, 3, 0.2, [3, 10, 100])
    direct = power_enumerator(parity_weight_enumerator(2, 3), 10)
    want = math.log(ball_count(direct, 6)) / (30 * math.log(2))
    assert rep.exponents[1] == pytest.approx(want, rel=1e-12)


def test_chernoff_fair_coin():
    coin = FiniteDistribution((0.0, 1.0), (0.5, 0.5))
    exact, bound = chernoff_check(coin, 0.25, 100)
    assert exact <= bound
    assert bound - exact < 0.03
    for ell in (1, 7, 40):
        e, b = chernoff_check(coin, 0.3, ell)
        assert e <= b + 1e-15


def test_chernoff_above_mean_is_zero():
    d = FiniteDistribution((0.0, 1.0, 2.0), (0.2, 0.5, 0.3))
    exact, bound = chernoff_check(d, 1.5, 20)
    assert bound == 0.0
    assert exact <= 0.0


def test_chernoff_rational_support():
    d = FiniteDistribution((0.0, 0.5, 1.5), (0.25, 0.25, 0.5))
    exact, bound = chernoff_check(d, 0.4, 30)
    assert exact <= bound
