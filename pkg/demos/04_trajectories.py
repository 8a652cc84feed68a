"""Partial-sum trajectories along the attenuator semigroup."""

import numpy as np

from gaussmaj import fock, harness

rec = harness.trajectory_check(fock.random_density(4, 3).matrix, t_max=2.0, steps=2000)
print("derivative bound slack:", rec.derivative_slack)
print("rearranged ODE residual:", rec.ode_residual)
print("dominance slack:", rec.dominance_slack)
for k in (0, 500, 1000, 2000):
    print(f"t={rec.times[k]:.1f}  s={np.round(rec.partial_sums[k], 4)}  "
          f"s_down={np.round(rec.passive_partial_sums[k], 4)}")

# A single photon decays to vacuum; its rearrangement is already the vacuum.
one = harness.trajectory_check(fock.fock_projector(1, 4), 2.0, 2000)
t = one.times
print("single photon vs 1 - exp(-t):", np.max(np.abs(one.populations[:, 0] - (1 - np.exp(-t)))))
