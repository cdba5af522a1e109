import itertools

import numpy as np
import pytest

from lrcbounds.core_math import (
    entropy_q,
    parity_weight_enumerator,
    pq_eval,
    shortened_parity_enumerator,
)


def brute_parity(q, n, s=None):
    """Weight distribution of {x in Q^n : x_1 + ... + x_s = 0}, over GF(q) additive group."""
    s = n if s is None else s
    add = (lambda a, b: a ^ b) if q == 4 else (lambda a, b: (a + b) % q)
    counts = [0] * (n + 1)
    for word in itertools.product(range(q), repeat=n):
        acc = 0
        for x in word[:s]:
            acc = add(acc, x)
        if acc == 0:
            counts[sum(1 for x in word if x)] += 1
    return counts


def test_entropy_examples():
    assert entropy_q(2, 0.5) == 1.0
    for q in (2, 3, 7):
        assert entropy_q(q, 0) == 0.0
    # 40-digit reference evaluation
    assert entropy_q(2, 0.2) == pytest.approx(0.72192809488736234787, abs=1e-15)
    assert entropy_q(4, 1.0) == pytest.approx(np.log(3) / np.log(4))


def test_entropy_domain():
    with pytest.raises(ValueError):
        entropy_q(2, 1.2)
    with pytest.raises(ValueError):
        entropy_q(2, -0.1)


def test_entropy_vectorized_endpoints_finite():
    v = entropy_q(3, np.array([0.0, 0.5, 1.0]))
    assert np.all(np.isfinite(v))


def test_parity_examples():
    assert parity_weight_enumerator(2, 5).coeffs == (1, 0, 10, 0, 5, 0)
    assert parity_weight_enumerator(2, 2).coeffs == (1, 0, 1)
    assert parity_weight_enumerator(3, 2).coeffs == (1, 0, 2)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_parity_matches_enumeration(q):
    limit = {2: 10, 3: 8, 4: 7}[q]
    for n in range(1, limit + 1):
        enum = parity_weight_enumerator(q, n)
        assert list(enum.coeffs) == brute_parity(q, n)
        assert sum(enum.coeffs) == q ** (n - 1)
        assert enum.dimension == n - 1


def test_shortened_examples():
    assert shortened_parity_enumerator(2, 5, 2).coeffs == (1, 3, 4, 4, 3, 1)
    assert shortened_parity_enumerator(2, 5, 3).coeffs == (1, 2, 4, 6, 3, 0)
    for q, n in [(2, 4), (3, 5), (4, 3)]:
        assert shortened_parity_enumerator(q, n, n) == parity_weight_enumerator(q, n)


def test_shortened_matches_enumeration():
    for q, n in [(2, 6), (3, 5)]:
        for s in range(1, n + 1):
            assert list(shortened_parity_enumerator(q, n, s).coeffs) == brute_parity(q, n, s)
            assert sum(shortened_parity_enumerator(q, n, s).coeffs) == q ** (n - 1)


def test_shortened_range():
    with pytest.raises(ValueError):
        shortened_parity_enumerator(2, 5, 0)
    with pytest.raises(ValueError):
        shortened_parity_enumerator(2, 5, 6)


def test_shortened_dominates_parity():
    for q in (2, 3, 4):
        for n in range(2, 8):
            full = parity_weight_enumerator(q, n)
            for s in range(1, n + 1):
                short = shortened_parity_enumerator(q, n, s)
                for z in (0.3, 0.7):
                    assert short.evaluate(z) >= full.evaluate(z) - 1e-12


def test_pq_examples():
    for q in (2, 3, 5):
        for n in (1, 3, 6):
            at0 = pq_eval(q, n, 0.0)
            assert at0.q_value == q and at0.p_value == 0
            at1 = pq_eval(q, n, 1.0)
            assert at1.q_value == q**n
            # P_1 vanishes identically, as does the derivative of Q_1
            assert at1.p_value == ((q - 1) * q ** (n - 1) if n > 1 else 0.0)


def test_pq_derivative():
    h = 1e-6
    for q in (2, 3, 4):
        for n in range(1, 9):
            for z in np.linspace(h, 1 - h, 15):
                fd = (pq_eval(q, n, z + h).q_value - pq_eval(q, n, z - h).q_value) / (2 * h)
                pv = n * pq_eval(q, n, z).p_value
                assert fd == pytest.approx(pv, rel=1e-4, abs=1e-4)
                assert pq_eval(q, n, z).q_value > 0


def test_pq_domain():
    with pytest.raises(ValueError):
        pq_eval(2, 3, 1.5)
