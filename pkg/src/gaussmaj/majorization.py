"""Majorization of spectra, Fock rearrangement and passivity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, InvalidDimensionError
from .fock import POSITIVITY_TOL, Spectrum, _check_dim, as_operator, eigh, eigvalsh_desc, is_hermitian

MAJORIZATION_TOL = 1e-9


@dataclass(frozen=True)
class MajorizationReport:
    """Partial-sum comparison of two decreasing sequences.

    ``slacks[n] = partial_sums_y[n] - partial_sums_x[n]``; the first
    sequence is weakly sub-majorized by the second when no slack falls below
    ``-tolerance``.
    """

    partial_sums_x: np.ndarray
    partial_sums_y: np.ndarray
    slacks: np.ndarray
    weakly_submajorized: bool
    majorized: bool
    tolerance: float

    @property
    def worst_slack(self) -> float:
        return float(self.slacks.min())


def decreasing_rearrangement(x) -> Spectrum:
    """Sort descending; ties keep their input order."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if not np.all(np.isfinite(x)):
        raise ContractViolation("sequence has non-finite entries")
    order = np.argsort(-x, kind="stable")
    return Spectrum(x[order])


def _as_decreasing(x, name):
    vals = np.asarray(x, dtype=float).reshape(-1)
    if np.any(np.diff(vals) > 0):
        raise ContractViolation(f"{name} must be in decreasing order")
    return vals


def submajorizes_weakly(x, y, tol: float = MAJORIZATION_TOL) -> MajorizationReport:
    """Compare the partial sums of ``x`` against those of ``y``.

    The returned report says whether ``x`` is weakly sub-majorized by ``y``
    (every partial sum of ``y`` is at least the matching one of ``x``), and
    whether, in addition, the totals agree (majorization).  Both inputs must
    already be decreasing; the shorter one is padded with zeros.

    >>> submajorizes_weakly([0.5, 0.5], [1.0, 0.0]).weakly_submajorized
    True
    """
    x = _as_decreasing(x, "x")
    y = _as_decreasing(y, "y")
    n = max(x.size, y.size)
    sx = np.cumsum(np.pad(x, (0, n - x.size)))
    sy = np.cumsum(np.pad(y, (0, n - y.size)))
    slacks = sy - sx
    weak = bool(slacks.min(initial=0.0) >= -tol)
    majorized = weak and abs((sx[-1] if n else 0.0) - (sy[-1] if n else 0.0)) <= tol
    return MajorizationReport(sx, sy, slacks, weak, majorized, tol)


def operator_submajorization(X, Y, tol: float = MAJORIZATION_TOL) -> MajorizationReport:
    """:func:`submajorizes_weakly` applied to the spectra of two Hermitian operators."""
    return submajorizes_weakly(eigvalsh_desc(as_operator(X)), eigvalsh_desc(as_operator(Y)), tol)


def fock_rearrangement(X, tol: float = POSITIVITY_TOL) -> np.ndarray:
    """The Fock-diagonal operator carrying the decreasing spectrum of ``X``.

    ``X`` must be positive semidefinite within ``tol``.
    """
    X = as_operator(X)
    spec, _ = eigh(X)
    if spec.values.min() < -tol:
        raise ContractViolation(f"Fock rearrangement needs a positive operator (min eigenvalue {spec.values.min():.3e})")
    return np.diag(spec.values).astype(complex)


def is_passive(X, tol: float = 1e-10) -> bool:
    """True when ``X`` is Fock-diagonal with a non-increasing diagonal, both within ``tol``."""
    X = as_operator(X)
    off = X - np.diag(np.diagonal(X))
    if np.max(np.abs(off), initial=0.0) > tol:
        return False
    diag = np.real(np.diagonal(X))
    return bool(np.all(np.diff(diag) <= tol))


def passive_projector(rank: int, dim: int) -> np.ndarray:
    """Projector onto the first ``rank`` Fock states."""
    dim = _check_dim(dim)
    if not 1 <= rank <= dim:
        raise InvalidDimensionError(f"rank must lie in [1, {dim}], got {rank}")
    return np.diag((np.arange(dim) < rank).astype(float)).astype(complex)


def projector_rank(P, tol: float = 1e-10) -> int:
    P = as_operator(P)
    if not (is_hermitian(P, tol) and np.max(np.abs(P @ P - P)) <= tol):
        raise ContractViolation("not an orthogonal projector")
    return int(round(np.real(np.trace(P))))


def ky_fan_slack(X, P, tol: float = 1e-10) -> float:
    """``(sum of the top rank(P) eigenvalues of X) - Tr[P X]``; nonnegative up to rounding."""
    X = as_operator(X)
    k = projector_rank(P, tol)
    top = np.sum(eigvalsh_desc(X)[:k])
    return float(top - np.real(np.trace(as_operator(P) @ X)))


def ky_fan_check(X, P, tol: float = 1e-10) -> bool:
    """Check ``Tr[P X] <= sum of the rank(P) largest eigenvalues of X`` up to ``tol``."""
    return ky_fan_slack(X, P, tol) >= -tol
