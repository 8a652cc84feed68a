"""Acceptance gate: one test per criterion, each at its stated tolerance.

A summary line per criterion is printed at the end of the pytest run.
"""

import math
import time

import numpy as np
import pytest

from gaussmaj import channels, fock, harness, thinning
from gaussmaj import majorization as mj

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def certification():
    start = time.perf_counter()
    report = harness.certify_main_theorem(trials_per_cell=500, seed=0)
    return report, time.perf_counter() - start


def test_criterion_01_main_theorem(certification, acceptance):
    report, elapsed = certification
    ok = (report.trials == 7 * 3 * 3 * 500 and report.failures == 0 and report.passivity_failures == 0
          and report.worst_slack >= -1e-9 and elapsed <= 300)
    acceptance(1, ok, f"{report.trials} trials, worst slack {report.worst_slack:.2e}, "
                      f"passivity failures {report.passivity_failures}, {elapsed:.0f} s")
    assert ok


def test_criterion_02_vacuum_output_majorizes(acceptance):
    report = harness.certify_main_theorem(trials_per_cell=200, seed=1, inputs="pure")
    ok = report.failures == 0 and report.worst_slack >= -1e-9
    acceptance(2, ok, f"{report.trials} pure states, worst slack {report.worst_slack:.2e}")
    assert ok


def test_criterion_03_thinning_equivalence(acceptance):
    rng = np.random.default_rng(3)
    lams = np.round(np.arange(1, 10) / 10, 1)
    worst = 0.0
    for _ in range(100):
        K = int(rng.integers(1, 41))
        p = rng.dirichlet(np.ones(K))
        for lam in lams:
            worst = max(worst, thinning.attenuator_equivalence_check(p, float(lam)))
    ok = worst <= 1e-12
    acceptance(3, ok, f"max deviation {worst:.2e}")
    assert ok


def test_criterion_04_thermal_covariance(acceptance):
    att = channels.apply_attenuator(fock.thermal_state(1.0, 60).matrix, 0.5)
    d_att = fock.trace_distance(att, fock.thermal_state(0.5, 60).matrix)
    amp = channels.apply_amplifier(fock.fock_projector(0, 60), 2.0, 128)
    d_amp = fock.trace_distance(amp, fock.thermal_state(1.0, 128).matrix)
    ok = d_att <= 1e-8 and d_amp <= 1e-6
    acceptance(4, ok, f"attenuator {d_att:.2e}, amplifier {d_amp:.2e}")
    assert ok


def test_criterion_05_lindblad_and_semigroup(acceptance):
    rho = fock.random_density(10, 5).matrix
    evolved = channels.evolve_lindblad(rho, math.log(2), 1e-3)
    d_rk4 = fock.trace_distance(evolved, channels.attenuator_kraus(0.5, 10).apply(rho))
    rng = np.random.default_rng(5)
    d_semi = 0.0
    for _ in range(100):
        lam, mu = rng.uniform(size=2)
        X = fock.random_density(8, rng).matrix
        two_step = channels.apply_attenuator(channels.apply_attenuator(X, lam), mu)
        d_semi = max(d_semi, fock.trace_distance(two_step, channels.apply_attenuator(X, lam * mu)))
    ok = d_rk4 <= 1e-8 and d_semi <= 1e-11
    acceptance(5, ok, f"RK4 vs Kraus {d_rk4:.2e}, semigroup {d_semi:.2e}")
    assert ok


def test_criterion_06_duality(acceptance):
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(5):
        worst = max(worst, harness.duality_check(100, 6, float(rng.uniform()), seed=int(rng.integers(2**31))))
    unital = max(np.max(np.abs(channels.dual_apply(np.eye(6), channels.attenuator_kraus(lam, 6)) - np.eye(6)))
                 for lam in (0.1, 0.5, 0.9))
    ok = worst <= 1e-11 and unital <= 1e-13
    acceptance(6, ok, f"pairing gap {worst:.2e}, dual unitality {unital:.2e}")
    assert ok


def test_criterion_07_characteristic_function_action(acceptance):
    zs = harness.z_grid(2.0, 9)
    inputs = {"vacuum": fock.fock_projector(0, 40), "thermal 1": fock.thermal_state(1.0, 40).matrix,
              "thermal 0.5": fock.thermal_state(0.5, 40).matrix}
    worst = 0.0
    for lam, noise in ((0.5, 0.0), (0.5, 1.0), (2.0, 0.0)):
        params = channels.make_params(lam, noise)
        for X in inputs.values():
            worst = max(worst, harness.char_function_action_check(X, params, zs, dim=40))
    ok = worst < 1e-4
    acceptance(7, ok, f"max relative deviation {worst:.2e}")
    assert ok


def test_criterion_08_trajectories(acceptance):
    deriv, ode, dom = math.inf, 0.0, math.inf
    all_ok = True
    for seed in range(50):
        rec = harness.trajectory_check(fock.random_density(4, [8, seed]).matrix, 2.0, 2000)
        all_ok &= rec.ok
        deriv, ode, dom = min(deriv, rec.derivative_slack), max(ode, rec.ode_residual), min(dom, rec.dominance_slack)
    one = harness.trajectory_check(fock.fock_projector(1, 4), 2.0, 2000)
    t = one.times
    closed = max(np.max(np.abs(one.populations[:, 0] - (1 - np.exp(-t)))),
                 np.max(np.abs(one.populations[:, 1] - np.exp(-t))))
    ok = all_ok and one.ok and closed <= 1e-8
    acceptance(8, ok, f"derivative slack {deriv:.2e}, ODE residual {ode:.2e}, "
                      f"dominance slack {dom:.2e}, single photon {closed:.2e}")
    assert ok


def test_criterion_09_ky_fan(acceptance):
    rng = np.random.default_rng(9)
    worst = math.inf
    for _ in range(1000):
        A = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        X = A + A.conj().T
        P = harness.random_projector(int(rng.integers(1, 9)), 8, rng)
        worst = min(worst, mj.ky_fan_slack(X, P))
    sat = 0.0
    for _ in range(50):
        X = fock.random_density(8, rng).matrix
        _, V = fock.eigh(X)
        for k in range(1, 9):
            sat = max(sat, abs(mj.ky_fan_slack(X, V[:, :k] @ V[:, :k].conj().T)))
    ok = worst >= -1e-10 and sat <= 1e-11
    acceptance(9, ok, f"worst slack {worst:.2e}, saturation gap {sat:.2e}")
    assert ok


def test_criterion_10_thinning_fock_optimality(acceptance):
    rng = np.random.default_rng(10)
    worst, rise = math.inf, -math.inf
    for _ in range(500):
        p = rng.dirichlet(np.ones(30))
        down = np.sort(p)[::-1]
        for lam in np.arange(1, 10) / 10:
            q_down = thinning.thin(down, lam)
            q = np.sort(thinning.thin(p, lam))[::-1]
            worst = min(worst, mj.submajorizes_weakly(q, q_down).worst_slack)
            rise = max(rise, float(np.max(np.diff(q_down))))
    ok = worst >= -1e-10 and rise <= 0.0
    acceptance(10, ok, f"worst slack {worst:.2e}, largest increase {rise:.2e}")
    assert ok


def test_criterion_11_entropy_ordering(certification, acceptance):
    report, _ = certification
    ok = report.entropy_failures == 0
    acceptance(11, ok, f"von Neumann worst {report.worst_entropy_slack:.2e}, "
                       f"Renyi-2 worst {report.worst_renyi2_slack:.2e}")
    assert ok
