import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gaussmaj import majorization as mj
from gaussmaj import thinning as th
from gaussmaj.errors import ContractViolation, InvalidDimensionError


def comb_kernel(lam, K):
    return np.array([[math.comb(k, n) * lam**n * (1 - lam) ** (k - n) if n <= k else 0.0
                      for k in range(K)] for n in range(K)])


def test_kernel_column_two_at_half():
    r = th.thinning_kernel(0.5, 3)
    assert np.allclose(r[:, 2], [0.25, 0.5, 0.25])


def test_kernel_endpoints():
    assert np.array_equal(th.thinning_kernel(1.0, 5), np.eye(5))
    r0 = th.thinning_kernel(0.0, 5)
    assert np.array_equal(r0[0], np.ones(5)) and np.all(r0[1:] == 0)


@pytest.mark.parametrize("lam", [0.0, 0.1, 0.37, 0.5, 0.99, 1.0])
def test_kernel_matches_binomial_formula(lam):
    assert np.allclose(th.thinning_kernel(lam, 25), comb_kernel(lam, 25), rtol=1e-12, atol=1e-16)


def test_kernel_is_upper_triangular_with_unit_columns():
    r = th.thinning_kernel(0.42, 500)
    assert np.all(np.tril(r, -1) == 0)
    assert np.max(np.abs(r.sum(axis=0) - 1)) < 1e-14
    assert np.all(np.isfinite(r))


def test_kernel_rejects_bad_arguments():
    with pytest.raises(ContractViolation):
        th.thinning_kernel(1.5, 3)
    with pytest.raises(InvalidDimensionError):
        th.thinning_kernel(0.5, 0)


def test_single_photon():
    assert np.allclose(th.thin([0, 1], 0.3), [0.7, 0.3])


def test_identity_parameter():
    p = np.random.default_rng(0).dirichlet(np.ones(10))
    assert np.array_equal(th.thin(p, 1.0), p)


def test_poisson_thins_to_poisson():
    out = th.thin(th.poisson(1.0, 60), 0.5)
    assert np.sum(np.abs(out - th.poisson(0.5, 60))) < 1e-12


def test_geometric_thins_to_geometric():
    out = th.thin(th.geometric(2.0, 200), 0.25)
    assert np.sum(np.abs(out - th.geometric(0.5, 200))) < 1e-12


@given(st.lists(st.floats(0, 10), min_size=1, max_size=40), st.floats(0, 1))
def test_sum_preserved(p, lam):
    p = np.array(p)
    assert abs(th.thin(p, lam).sum() - p.sum()) <= 1e-14 * max(1.0, p.sum()) * len(p)


@given(st.lists(st.floats(0, 1), min_size=1, max_size=30), st.floats(0, 1), st.floats(0, 1))
def test_semigroup(p, lam, mu):
    p = np.array(p)
    assert np.max(np.abs(th.thin(th.thin(p, lam), mu) - th.thin(p, lam * mu))) < 1e-13


def test_decreasing_stays_decreasing_and_optimal():
    rng = np.random.default_rng(3)
    for _ in range(100):
        p = rng.dirichlet(np.ones(15))
        down = np.sort(p)[::-1]
        for lam in (0.1, 0.5, 0.9):
            q_down = th.thin(down, lam)
            assert np.all(np.diff(q_down) <= 1e-15)
            rep = mj.submajorizes_weakly(np.sort(th.thin(p, lam))[::-1], q_down, 1e-10)
            assert rep.majorized


def test_equivalence_with_quantum_attenuator():
    assert th.attenuator_equivalence_check(th.delta(0, 5), 0.3) == 0.0
    rng = np.random.default_rng(4)
    assert th.attenuator_equivalence_check(rng.dirichlet(np.ones(20)), 0.7) <= 1e-12
    geo = th.geometric(1.0, 40)
    assert th.attenuator_equivalence_check(geo, 0.5) <= 1e-12
    assert np.allclose(th.thin(geo, 0.5), th.geometric(0.5, 40), atol=1e-11)


def test_equivalence_with_padding_and_mismatch():
    assert th.attenuator_equivalence_check([0.2, 0.3, 0.5], 0.4, dim=8) <= 1e-14
    with pytest.raises(InvalidDimensionError):
        th.attenuator_equivalence_check([0.2, 0.3, 0.5], 0.4, dim=2)


def test_rejects_negative_weights():
    with pytest.raises(ContractViolation):
        th.thin([0.5, -0.1], 0.5)
