"""Truncated Fock-space operator algebra.

Operators live on span{|0>, ..., |D-1>} and are stored as dense complex
``(D, D)`` numpy arrays with ``X[m, n] = <m|X|n>``.  Everything here is a pure
function of its arguments; random draws take an explicit seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, InvalidDimensionError, TruncationError

HERMITIAN_TOL = 1e-12
POSITIVITY_TOL = 1e-10
DEGENERACY_TOL = 1e-12
# displacement/charFunction give up above this relative truncation error
CHAR_TRUNCATION_TOL = 1e-3


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in decreasing order.

    Only the ordering is validated; nonnegativity is checked by the callers
    that need it.  ``degenerate`` is set when two adjacent eigenvalues agree
    within the degeneracy tolerance used to build the spectrum.
    """

    values: np.ndarray
    degenerate: bool = False

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float).reshape(-1)
        if np.any(np.diff(vals) > 0):
            raise ContractViolation("spectrum must be non-increasing")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def __len__(self):
        return self.values.size

    def __getitem__(self, idx):
        return self.values[idx]

    def partial_sums(self) -> np.ndarray:
        return np.cumsum(self.values)


@dataclass(frozen=True)
class DensityMatrix:
    """A truncated density matrix together with the probability lost to truncation.

    ``trace_deficit`` is ``1 - Tr(rho)`` for the untruncated state, i.e. the
    weight that lives on Fock levels ``>= dim``.
    """

    matrix: np.ndarray
    trace_deficit: float = 0.0

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] < 1:
            raise InvalidDimensionError(f"density matrix must be square, got shape {mat.shape}")
        if not np.all(np.isfinite(mat)):
            raise ContractViolation("density matrix has non-finite entries")
        if self.trace_deficit < 0:
            raise ContractViolation("trace_deficit must be >= 0")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def _check_dim(dim) -> int:
    if isinstance(dim, bool) or not isinstance(dim, (int, np.integer)) or dim < 1:
        raise InvalidDimensionError(f"dimension must be a positive integer, got {dim!r}")
    return int(dim)


def as_operator(X) -> np.ndarray:
    """Return ``X`` as a square complex array, validating shape and finiteness."""
    X = np.asarray(X, dtype=complex)
    if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape[0] < 1:
        raise InvalidDimensionError(f"operator must be a non-empty square matrix, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ContractViolation("operator has non-finite entries")
    return X


def annihilation(dim: int) -> np.ndarray:
    """Truncated annihilation operator, ``a|n> = sqrt(n)|n-1>``."""
    dim = _check_dim(dim)
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)


def creation(dim: int) -> np.ndarray:
    """Truncated creation operator; ``|dim-1>`` is mapped to zero."""
    dim = _check_dim(dim)
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=-1).astype(complex)


def number(dim: int) -> np.ndarray:
    dim = _check_dim(dim)
    return np.diag(np.arange(dim, dtype=float)).astype(complex)


def is_hermitian(X, tol: float = HERMITIAN_TOL) -> bool:
    X = np.asarray(X)
    return bool(np.max(np.abs(X - X.conj().T), initial=0.0) <= tol)


def eigh(X, hermitian_tol: float = HERMITIAN_TOL, degeneracy_tol: float = DEGENERACY_TOL):
    """Diagonalize a Hermitian operator with eigenvalues in decreasing order.

    Parameters
    ----------
    X : array_like
        Hermitian ``(D, D)`` matrix.
    hermitian_tol : float
        Largest tolerated ``|X - X^dagger|`` entry.
    degeneracy_tol : float
        Adjacent eigenvalues closer than this mark the spectrum as degenerate.
        Ties keep the solver's ordering.

    Returns
    -------
    spectrum : Spectrum
    vectors : ndarray
        Unitary matrix whose columns are the matching eigenvectors.
    """
    X = as_operator(X)
    if not is_hermitian(X, hermitian_tol):
        raise ContractViolation("eigh requires a Hermitian operator")
    vals, vecs = np.linalg.eigh(0.5 * (X + X.conj().T))
    vals = vals[::-1]
    vecs = vecs[:, ::-1]
    degenerate = bool(vals.size > 1 and np.min(-np.diff(vals)) < degeneracy_tol)
    return Spectrum(vals, degenerate), vecs


def eigvalsh_desc(X) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, decreasing, without validation."""
    X = np.asarray(X)
    return np.linalg.eigvalsh(0.5 * (X + X.conj().T))[::-1]


def trace_norm(X) -> float:
    """Sum of singular values."""
    return float(np.sum(np.linalg.svd(as_operator(X), compute_uv=False)))


def hs_norm(X) -> float:
    """Hilbert-Schmidt (Frobenius) norm."""
    return float(np.linalg.norm(as_operator(X), "fro"))


def trace_distance(X, Y) -> float:
    """Half the trace norm of ``X - Y``; operators of different size are zero-padded."""
    X, Y = as_operator(X), as_operator(Y)
    d = max(X.shape[0], Y.shape[0])
    return 0.5 * trace_norm(embed(X, d) - embed(Y, d))


def embed(X, dim: int) -> np.ndarray:
    """Zero-pad ``X`` to ``dim`` levels (``dim`` must not be smaller)."""
    X = np.asarray(X, dtype=complex)
    if dim < X.shape[0]:
        raise InvalidDimensionError(f"cannot embed a {X.shape[0]}-level operator into {dim} levels")
    out = np.zeros((dim, dim), dtype=complex)
    out[: X.shape[0], : X.shape[1]] = X
    return out


def fock_projector(n: int, dim: int) -> np.ndarray:
    """``|n><n|`` on ``dim`` levels."""
    dim = _check_dim(dim)
    out = np.zeros((dim, dim), dtype=complex)
    out[n, n] = 1.0
    return out


def thermal_state(mean_photons: float, dim: int) -> DensityMatrix:
    """Thermal state with the given mean photon number, truncated to ``dim`` levels.

    The populations are those of the full geometric distribution; the tail
    beyond ``dim - 1`` is recorded in ``trace_deficit``.
    """
    dim = _check_dim(dim)
    if not mean_photons >= 0:
        raise ContractViolation(f"mean photon number must be >= 0, got {mean_photons}")
    q = mean_photons / (mean_photons + 1.0)
    p = np.power(q, np.arange(dim)) / (mean_photons + 1.0)
    return DensityMatrix(np.diag(p).astype(complex), trace_deficit=float(q**dim))


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a complex Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_density(dim: int, seed, spectrum=None) -> DensityMatrix:
    """Random density matrix ``U diag(p) U^dagger`` with Haar ``U``.

    Parameters
    ----------
    dim : int
    seed : int, sequence of int, or numpy Generator
        Anything accepted by ``numpy.random.default_rng``.
    spectrum : array_like, optional
        Eigenvalues to use (zero-padded to ``dim``). Must sum to one. If
        omitted, drawn uniformly from the probability simplex.
    """
    dim = _check_dim(dim)
    rng = np.random.default_rng(seed)
    if spectrum is None:
        p = rng.dirichlet(np.ones(dim))
    else:
        p = np.asarray(spectrum, dtype=float).reshape(-1)
        if p.size > dim:
            raise InvalidDimensionError(f"spectrum of length {p.size} does not fit in {dim} levels")
        if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-12:
            raise ContractViolation("spectrum must be nonnegative and sum to 1")
        p = np.concatenate([p, np.zeros(dim - p.size)])
    u = haar_unitary(dim, rng)
    rho = (u * p) @ u.conj().T
    return DensityMatrix(0.5 * (rho + rho.conj().T))


def displacement(z: complex, dim: int) -> np.ndarray:
    """``exp(z a^dagger - conj(z) a)`` with the generator truncated to ``dim`` levels.

    The generator is anti-Hermitian on the truncated space, so the result is
    exactly unitary; matrix elements between low Fock levels converge to the
    untruncated ones as ``dim`` grows.
    """
    dim = _check_dim(dim)
    a = annihilation(dim)
    # z a^dag - z* a = -i H with H Hermitian
    h = 1j * (z * a.conj().T - np.conj(z) * a)
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w)) @ v.conj().T


def _padding(z: complex, dim: int) -> int:
    r = abs(z)
    return int(math.ceil(2 * r * math.sqrt(dim) + 2 * r * r + 10 * (1 + r)))


def char_function(X, z: complex, dim: int | None = None, *, tol: float = CHAR_TRUNCATION_TOL,
                  return_error: bool = False):
    """Characteristic function ``Tr[D(z) X]``.

    ``X`` is zero-padded to ``dim`` levels (default: its own size) before the
    trace is taken.  The truncation error is estimated by repeating the
    computation on a larger space; it is expressed relative to the trace
    norm of ``X`` and a :class:`TruncationError` is raised above ``tol``.

    Returns the complex value, or ``(value, error_estimate)`` when
    ``return_error`` is true.
    """
    X = as_operator(X)
    dim = X.shape[0] if dim is None else max(_check_dim(dim), X.shape[0])
    if z == 0:
        value = complex(np.trace(X))
        return (value, 0.0) if return_error else value
    value = _trace_with_displacement(embed(X, dim), z)
    big = dim + _padding(z, dim)
    reference = _trace_with_displacement(embed(X, big), z)
    scale = trace_norm(X)
    err = abs(value - reference) / scale if scale > 0 else 0.0
    if err > tol:
        raise TruncationError(
            f"|z|={abs(z):.3g} needs more than {dim} Fock levels (relative error ~{err:.2e})")
    return (value, err) if return_error else value


def _trace_with_displacement(X: np.ndarray, z: complex) -> complex:
    D = displacement(z, X.shape[0])
    return complex(np.sum(D * X.T))
