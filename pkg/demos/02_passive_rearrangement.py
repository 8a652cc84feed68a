"""Passive states, Fock rearrangement and the Ky Fan principle."""

import numpy as np

from gaussmaj import fock, harness
from gaussmaj import majorization as mj

rho = fock.random_density(5, 42).matrix
down = mj.fock_rearrangement(rho)
print("spectrum:", np.round(fock.eigvalsh_desc(rho), 4))
print("rearranged diagonal:", np.round(np.real(np.diagonal(down)), 4))
print("rearrangement is passive:", mj.is_passive(down))

# A state and its rearrangement share a spectrum, so they majorize each other.
report = mj.operator_submajorization(rho, down)
print("mutually majorized:", report.majorized, "slacks:", report.slacks)

# Ky Fan: no rank-k projector captures more of rho than its top-k eigenspace.
rng = np.random.default_rng(0)
slacks = [mj.ky_fan_slack(rho, harness.random_projector(2, 5, rng)) for _ in range(1000)]
print("smallest Ky Fan slack over 1000 rank-2 projectors:", min(slacks))
