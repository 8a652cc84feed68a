"""Attenuators, amplifiers and their composition on a truncated Fock space."""

import numpy as np

from gaussmaj import channels, fock

# A beam splitter of transmissivity 1/2 halves the mean photon number of a
# thermal state and keeps it thermal.
rho = fock.thermal_state(1.0, 60).matrix
out = channels.apply_attenuator(rho, 0.5)
print("attenuated thermal vs thermal(0.5):",
      fock.trace_distance(out, fock.thermal_state(0.5, 60).matrix))

# The same map from closed-form Kraus operators, an independent route.
kraus = channels.attenuator_kraus(0.5, 60)
print("explicit vs Kraus route:", np.max(np.abs(kraus.apply(rho) - out)))

# Amplifiers need room to grow; the output size is chosen so the weight
# pushed past the last level stays below a bound, and that weight is reported.
vac = fock.fock_projector(0, 8)
amp, lost = channels.apply_amplifier(vac, 2.0, 128, return_deficit=True)
print("amplified vacuum vs thermal(1):",
      fock.trace_distance(amp, fock.thermal_state(1.0, 128).matrix), "lost weight:", lost)

# Any (lambda, noise) channel splits into an attenuator followed by an amplifier.
params = channels.make_params(0.5, 1.0)
print(f"lambda=0.5, noise=1 -> eta={params.eta:.6f}, kappa={params.kappa:.6f}")

# The attenuator semigroup is generated by a Lindbladian.
rk4 = channels.evolve_lindblad(fock.fock_projector(3, 10), np.log(2))
print("RK4 at t=ln 2 vs lambda=1/2:",
      fock.trace_distance(rk4, channels.apply_attenuator(fock.fock_projector(3, 10), 0.5)))
