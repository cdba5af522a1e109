import numpy as np
import pytest

from lrcbounds.disjoint_bounds import r0_lower, r1, r12, r2, r_cm, r_sp
from lrcbounds.large_deviations import lambda_growth
from lrcbounds.lp_bounds import default_r_opt, singleton_r_opt

DELTAS = (0.07, 0.10, 0.15, 0.30)


def test_r0_examples():
    assert r0_lower(2, 4, 0.0) == 0.75
    assert r0_lower(3, 5, 2 / 3) == 0.0
    assert r0_lower(2, 4, 0.7) == 0.0
    assert r0_lower(2, 4, 0.07) == pytest.approx(0.75 - lambda_growth(2, 4, 0.07).value)


def test_r_sp_table():
    for d, ref in zip(DELTAS, (0.6133, 0.5681, 0.5004, 0.3346)):
        assert r_sp(2, 4, d) == pytest.approx(ref, abs=5e-4)
    assert r_sp(2, 4, 0.0) == 0.75


def test_r_cm_singleton_identity():
    plug = singleton_r_opt()
    for d in np.linspace(0, 0.49, 100):
        assert r_cm(2, 4, d, plug) == pytest.approx(0.75 * (1 - d), abs=1e-9)


def test_r_cm_examples():
    assert r_cm(2, 4, 0.3) == pytest.approx(0.2427, abs=2e-3)
    assert r_cm(2, 4, 0.0) == 0.75
    assert r_cm(2, 4, 0.5) == 0.0


def test_r1_examples_and_slices():
    assert r1(2, 4, 0.15) == pytest.approx(0.4830, abs=2e-3)
    for d in DELTAS:
        v = r1(2, 4, d)
        assert v <= r_cm(2, 4, d) + 1e-12
        assert v <= r_sp(2, 4, d) + 1e-12


def test_r1_state_satisfies_constraint():
    st = r1(2, 4, 0.2, full=True)
    assert 0 < st.tau < 1
    assert st.tau * st.theta + (1 - st.tau) * st.theta_prime == pytest.approx(0.2, abs=1e-12)


def test_r2_examples():
    assert r2(2, 4, 0.07) == pytest.approx(0.6079, abs=2e-3)
    assert r2(2, 4, 0.30) == pytest.approx(0.2470, abs=2e-3)
    assert r2(2, 4, 0.30) > r1(2, 4, 0.30)
    assert r2(2, 4, 0.0) <= 0.75


def test_r2_vectorized_matches_scalar():
    d = np.array([0.05, 0.2, 0.35])
    assert np.allclose(r2(2, 4, d), [r2(2, 4, x) for x in d], atol=1e-12)


def test_r2_requires_plugin_for_q3():
    with pytest.raises(NotImplementedError):
        r2(3, 4, 0.1)


def test_r12_examples():
    assert r12(2, 4, 0.07) == pytest.approx(0.6079, abs=2e-3)
    assert r12(2, 4, 0.30) == pytest.approx(0.2391, abs=2e-3)


def test_ordering_on_grid():
    for d in np.linspace(0.01, 0.45, 7):
        a, b, c = r1(2, 4, d), r2(2, 4, d), r12(2, 4, d)
        assert c <= a + 1e-9 and c <= b + 1e-9
        low = r0_lower(2, 4, d)
        for upper in (a, b, c, r_sp(2, 4, d), r_cm(2, 4, d)):
            assert upper >= low - 1e-9


def test_endpoints():
    for f in (r_cm, r1, r2, r12):
        assert f(2, 4, 0.5) == 0.0
    for f in (r_sp, r_cm, r1, r12):
        assert f(2, 4, 0.0) == pytest.approx(0.75, abs=1e-12)


def test_refinement_stability():
    for d in DELTAS:
        assert abs(r_cm(2, 4, d, points=8001) - r_cm(2, 4, d)) < 5e-5
        assert abs(r1(2, 4, d, points=4001) - r1(2, 4, d)) < 5e-5
        assert abs(r2(2, 4, d, points=8001) - r2(2, 4, d)) < 5e-5
    assert abs(r12(2, 4, 0.15, points=2001) - r12(2, 4, 0.15)) < 5e-5


def test_ternary_uses_aaltonen():
    r_opt = default_r_opt(3)
    v = r1(3, 4, 0.2, r_lrc=r_opt)
    assert 0 < v <= r_sp(3, 4, 0.2) + 1e-12
