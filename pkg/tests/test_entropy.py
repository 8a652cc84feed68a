import math

import numpy as np
import pytest

from gaussmaj import entropy, fock
from gaussmaj.errors import ContractViolation


def test_pure_state_has_zero_entropy():
    rho = fock.random_density(4, 1, [1.0])
    assert entropy.von_neumann(rho) == pytest.approx(0, abs=1e-12)
    for alpha in (2, 7):
        assert entropy.renyi(rho, alpha) == pytest.approx(0, abs=1e-12)
    # orders below one amplify roundoff eigenvalues as sqrt(1e-16)
    assert entropy.renyi(rho, 0.5) == pytest.approx(0, abs=1e-7)


def test_maximally_mixed():
    assert entropy.von_neumann(np.eye(2) / 2) == pytest.approx(0.6931472, abs=1e-7)
    for d in (2, 5):
        for alpha in (0.3, 2, 10):
            assert entropy.renyi(np.eye(d) / d, alpha) == pytest.approx(math.log(d))


def test_thermal_entropy_closed_form():
    # (n+1) ln(n+1) - n ln n with n = 1
    assert entropy.von_neumann(fock.thermal_state(1, 60)) == pytest.approx(2 * math.log(2), abs=1e-8)


def test_renyi_brackets_von_neumann():
    rho = fock.random_density(5, 8)
    s = entropy.von_neumann(rho)
    lo, hi = entropy.renyi(rho, 1 + 1e-6), entropy.renyi(rho, 1 - 1e-6)
    assert lo <= s <= hi
    assert hi - lo < 1e-4


def test_renyi_rejects_order_one():
    with pytest.raises(ContractViolation):
        entropy.renyi(np.eye(2) / 2, 1.0)


def test_trace_contract():
    with pytest.raises(ContractViolation):
        entropy.von_neumann(np.eye(2))
    # truncated thermal state: accepted once the deficit is accounted for
    th = fock.thermal_state(3, 20)
    assert th.trace_deficit > 1e-6
    entropy.von_neumann(th)
    with pytest.raises(ContractViolation):
        entropy.von_neumann(th.matrix)


def test_shannon():
    assert entropy.shannon([1, 0, 0]) == 0
    assert entropy.shannon(np.full(4, 0.25)) == pytest.approx(math.log(4))
    with pytest.raises(ContractViolation):
        entropy.shannon([0.5, 0.4])


def test_shannon_matches_von_neumann_on_diagonal_states():
    p = np.random.default_rng(0).dirichlet(np.ones(6))
    assert entropy.shannon(p) == pytest.approx(entropy.von_neumann(np.diag(p)), abs=1e-12)


def test_unitary_invariance():
    rng = np.random.default_rng(5)
    for _ in range(20):
        rho = fock.random_density(6, rng).matrix
        U = fock.haar_unitary(6, rng)
        assert abs(entropy.von_neumann(U @ rho @ U.conj().T) - entropy.von_neumann(rho)) < 1e-10
