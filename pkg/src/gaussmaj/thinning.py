"""Classical thinning of photon-number distributions.

Each of ``k`` photons survives independently with probability ``lam``; the
kernel ``r[n, k] = binom(k, n) lam^n (1-lam)^(k-n)`` maps input to output
distributions.  On Fock-diagonal states the quantum-limited attenuator acts
exactly as this kernel, which :func:`attenuator_equivalence_check` verifies
through two unrelated code paths.
"""

from __future__ import annotations

import math

import numpy as np

from .channels import apply_attenuator
from .errors import ContractViolation, InvalidDimensionError


def _check_lambda(lam):
    if not 0.0 <= lam <= 1.0:
        raise ContractViolation(f"thinning parameter must lie in [0, 1], got {lam}")


def as_distribution(p) -> np.ndarray:
    p = np.asarray(p, dtype=float).reshape(-1)
    if p.size == 0 or not np.all(np.isfinite(p)) or np.any(p < 0):
        raise ContractViolation("distribution must be a non-empty sequence of finite nonnegative weights")
    return p


def thinning_kernel(lam: float, K: int) -> np.ndarray:
    """``K x K`` transition matrix, rows indexed by output ``n``, columns by input ``k``.

    Columns are built with the Pascal recurrence
    ``r[n, k+1] = lam * r[n-1, k] + (1 - lam) * r[n, k]`` starting from the
    point mass at zero, so no binomial coefficient is ever formed. Each column
    is rescaled to unit sum, which only removes accumulated rounding drift.
    """
    _check_lambda(lam)
    if K < 1:
        raise InvalidDimensionError(f"kernel size must be positive, got {K}")
    r = np.zeros((K, K))
    col = np.zeros(K)
    col[0] = 1.0
    r[:, 0] = col
    for k in range(1, K):
        nxt = (1.0 - lam) * col
        nxt[1:] += lam * col[:-1]
        col = nxt / math.fsum(nxt)
        r[:, k] = col
    return r


def thin(p, lam: float) -> np.ndarray:
    """Distribution of surviving photons; the output has the input length."""
    p = as_distribution(p)
    return thinning_kernel(lam, p.size) @ p


def poisson(mean: float, K: int) -> np.ndarray:
    """Poisson weights for ``n = 0 .. K-1`` (not renormalized)."""
    out = np.empty(K)
    out[0] = np.exp(-mean)
    for n in range(1, K):
        out[n] = out[n - 1] * mean / n
    return out


def geometric(mean: float, K: int) -> np.ndarray:
    """Bose-Einstein (thermal) photon-number weights for ``n = 0 .. K-1``."""
    q = mean / (mean + 1.0)
    return np.power(q, np.arange(K)) / (mean + 1.0)


def delta(n: int, K: int) -> np.ndarray:
    out = np.zeros(K)
    out[n] = 1.0
    return out


def attenuator_equivalence_check(p, lam: float, dim: int | None = None) -> float:
    """Largest deviation between the attenuated Fock-diagonal state and the thinned distribution.

    Parameters
    ----------
    p : array_like
        Nonnegative weights of length ``K``.
    lam : float
        Transmissivity in ``[0, 1]``.
    dim : int, optional
        Fock dimension for the quantum side, ``>= K``; defaults to ``K``.
    """
    p = as_distribution(p)
    dim = p.size if dim is None else dim
    if dim < p.size:
        raise InvalidDimensionError(f"Fock dimension {dim} is smaller than the distribution length {p.size}")
    x = np.zeros(dim)
    x[: p.size] = p
    quantum = np.real(np.diagonal(apply_attenuator(np.diag(x).astype(complex), lam)))
    classical = thin(x, lam)
    return float(np.max(np.abs(quantum - classical)))
