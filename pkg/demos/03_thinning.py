"""Classical photon loss as binomial thinning, and its quantum counterpart."""

import numpy as np

from gaussmaj import thinning

print("one photon through lambda=0.3:", thinning.thin([0, 1], 0.3))
print("two photons through lambda=0.5:", thinning.thin(thinning.delta(2, 3), 0.5))

q = thinning.thin(thinning.poisson(1.0, 60), 0.5)
print("Poisson(1) thinned by 1/2 vs Poisson(1/2), l1:",
      np.abs(q - thinning.poisson(0.5, 60)).sum())

# The attenuator restricted to Fock-diagonal states is exactly this kernel.
p = np.random.default_rng(1).dirichlet(np.ones(20))
print("quantum vs classical path:", thinning.attenuator_equivalence_check(p, 0.7))

# Sorting the input can only concentrate the output.
down = np.sort(p)[::-1]
print("thin(p) sorted:", np.round(np.sort(thinning.thin(p, 0.7))[::-1][:5], 4))
print("thin(p_down):  ", np.round(thinning.thin(down, 0.7)[:5], 4))
