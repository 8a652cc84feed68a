"""Gauge-covariant bosonic Gaussian channels on truncated Fock spaces.

Simulation of the one-mode attenuator, amplifier and their compositions,
together with majorization tools and randomized checks that passive
(Fock-rearranged) inputs give the least noisy outputs.
"""

from .channels import (
    GaugeCovariantParams,
    KrausSet,
    amplifier_kraus,
    apply_amplifier,
    apply_attenuator,
    apply_gauge_covariant,
    attenuator_kraus,
    dual_apply,
    evolve_lindblad,
    gauge_covariant_kraus,
    lindblad_apply,
    make_params,
)
from .entropy import renyi, shannon, von_neumann
from .errors import ContractViolation, GaussMajError, InvalidDimensionError, TruncationError
from .fock import (
    DensityMatrix,
    Spectrum,
    annihilation,
    char_function,
    creation,
    displacement,
    eigh,
    hs_norm,
    number,
    random_density,
    thermal_state,
    trace_distance,
    trace_norm,
)
from .harness import (
    CertificationReport,
    TrajectoryRecord,
    certify_main_theorem,
    char_function_action_check,
    duality_check,
    trajectory_check,
)
from .majorization import (
    MajorizationReport,
    decreasing_rearrangement,
    fock_rearrangement,
    is_passive,
    ky_fan_check,
    passive_projector,
    submajorizes_weakly,
)
from .thinning import attenuator_equivalence_check, thin, thinning_kernel

__version__ = "0.1.0"
