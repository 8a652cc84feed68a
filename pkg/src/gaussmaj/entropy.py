"""Von Neumann, Renyi and Shannon entropies (natural logarithm)."""

from __future__ import annotations

import numpy as np

from .errors import ContractViolation
from .fock import DensityMatrix, as_operator, eigvalsh_desc

TRACE_TOL = 1e-6


def _state_eigenvalues(rho, trace_deficit):
    if isinstance(rho, DensityMatrix):
        trace_deficit = rho.trace_deficit if trace_deficit is None else trace_deficit
        rho = rho.matrix
    trace_deficit = 0.0 if trace_deficit is None else trace_deficit
    rho = as_operator(rho)
    tr = float(np.real(np.trace(rho)))
    if abs(tr + trace_deficit - 1.0) > TRACE_TOL:
        raise ContractViolation(f"state has trace {tr:.8f} with deficit {trace_deficit:.2e}")
    # absorb tiny negative eigenvalues from the solver
    return np.clip(eigvalsh_desc(rho), 0.0, 1.0)


def _shannon_terms(p):
    p = p[p > 0]
    return float(-np.sum(p * np.log(p))) + 0.0  # no -0.0


def von_neumann(rho, trace_deficit: float | None = None) -> float:
    """``-Tr[rho ln rho]`` in nats.

    ``trace_deficit`` accounts for weight truncated away from ``rho``; it is
    read from a :class:`DensityMatrix` when not given.
    """
    return _shannon_terms(_state_eigenvalues(rho, trace_deficit))


def renyi(rho, alpha: float, trace_deficit: float | None = None) -> float:
    """Renyi entropy ``ln(sum p^alpha) / (1 - alpha)`` of order ``alpha > 0, alpha != 1``."""
    if not alpha > 0 or alpha == 1:
        raise ContractViolation(f"Renyi order must be positive and != 1, got {alpha}")
    p = _state_eigenvalues(rho, trace_deficit)
    p = p[p > 0]
    return float(np.log(np.sum(p**alpha)) / (1.0 - alpha))


def shannon(p) -> float:
    """Shannon entropy of a normalized distribution."""
    p = np.asarray(p, dtype=float).reshape(-1)
    if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-10:
        raise ContractViolation("Shannon entropy needs a normalized nonnegative distribution")
    return _shannon_terms(p)
