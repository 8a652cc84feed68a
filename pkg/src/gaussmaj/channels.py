"""Gauge-covariant bosonic Gaussian channels on a truncated Fock space.

Every one-mode gauge-covariant channel with parameters ``(lam, noise)`` is
realized as a quantum-limited amplifier of gain ``kappa`` applied after a
quantum-limited attenuator of transmissivity ``eta``, with ``kappa * eta = lam``.
The attenuator is exact on the truncated space (it never raises photon
number); the amplifier leaks weight above the top level, which is tracked as
a trace deficit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import betainc, gammaln, xlogy

from .errors import ContractViolation, InvalidDimensionError, TruncationError
from .fock import _check_dim, annihilation, as_operator, embed, number

DEFAULT_DT = 1e-3
DEFAULT_MAX_DEFICIT = 1e-6


@dataclass(frozen=True)
class GaugeCovariantParams:
    """Channel parameters plus the attenuator/amplifier split."""

    lam: float
    noise: float
    eta: float
    kappa: float

    @property
    def quantum_limited(self) -> bool:
        return self.noise == 0


def make_params(lam: float, noise: float = 0.0) -> GaugeCovariantParams:
    """Split a ``(lam, noise)`` channel into attenuator ``eta`` and amplifier ``kappa``.

    The Gaussian damping exponent of the composition is
    ``(2*kappa - kappa*eta - 1) / 2``; equating it to ``|lam - 1| (noise + 1/2)``
    with ``kappa * eta = lam`` fixes ``kappa = (1 + lam)/2 + |lam - 1| (noise + 1/2)``.
    """
    if not (lam >= 0 and noise >= 0) or not (math.isfinite(lam) and math.isfinite(noise)):
        raise ContractViolation(f"need lam >= 0 and noise >= 0, got lam={lam}, noise={noise}")
    if lam <= 1:
        kappa = 1.0 + noise * (1.0 - lam)
    else:
        kappa = lam * (noise + 1.0) - noise
    return GaugeCovariantParams(float(lam), float(noise), float(lam / kappa), float(kappa))


def _check_lambda(lam):
    if not 0.0 <= lam <= 1.0:
        raise ContractViolation(f"attenuator transmissivity must lie in [0, 1], got {lam}")


@lru_cache(maxsize=256)
def _kraus_coefficients(lam: float, n_ops: int, n_levels: int) -> np.ndarray:
    # c[l, m] = sqrt(binom(m+l, l)) (1-lam)^(l/2) lam^(m/2), with 0^0 = 1 via xlogy
    l = np.arange(n_ops)[:, None]
    m = np.arange(n_levels)[None, :]
    log_c2 = (gammaln(m + l + 1) - gammaln(m + 1) - gammaln(l + 1)
              + xlogy(l, 1.0 - lam) + xlogy(m, lam))
    c = np.exp(0.5 * log_c2)
    c.setflags(write=False)
    return c


def _kraus_sum(K: np.ndarray, X: np.ndarray) -> np.ndarray:
    # sum_l K_l X K_l^dagger as one (out, L*in) @ (L*in, out) product
    L, out, inn = K.shape
    left = np.transpose(K @ X, (1, 0, 2)).reshape(out, L * inn)
    right = np.transpose(K, (1, 0, 2)).reshape(out, L * inn)
    return left @ right.conj().T


@dataclass(frozen=True)
class KrausSet:
    """Kraus operators stacked as an array of shape ``(L, out_dim, in_dim)``."""

    operators: np.ndarray
    lam: float

    @property
    def dims(self) -> tuple[int, int]:
        return self.operators.shape[2], self.operators.shape[1]

    def __len__(self):
        return self.operators.shape[0]

    def apply(self, X) -> np.ndarray:
        X = as_operator(X)
        if X.shape[0] != self.dims[0]:
            raise InvalidDimensionError(f"expected a {self.dims[0]}-level input, got {X.shape[0]}")
        return _kraus_sum(self.operators, X)

    def dual(self, Y) -> np.ndarray:
        Y = as_operator(Y)
        if Y.shape[0] != self.dims[1]:
            raise InvalidDimensionError(f"expected a {self.dims[1]}-level operator, got {Y.shape[0]}")
        return _kraus_sum(np.conj(np.swapaxes(self.operators, 1, 2)), Y)

    def completeness(self) -> np.ndarray:
        """``sum_l K_l^dagger K_l`` (the identity for a trace-preserving set)."""
        K = self.operators
        return np.einsum("lji,ljk->ik", K.conj(), K)

    def then(self, second: "KrausSet") -> "KrausSet":
        """Kraus set of ``second`` applied after ``self``."""
        if second.dims[0] != self.dims[1]:
            raise InvalidDimensionError("dimension mismatch in channel composition")
        ops = np.einsum("aij,bjk->abik", second.operators, self.operators)
        ops = ops.reshape(-1, *ops.shape[2:])
        return KrausSet(ops, second.lam * self.lam)


@lru_cache(maxsize=128)
def attenuator_kraus(lam: float, dim: int) -> KrausSet:
    """Kraus set ``B_0 ... B_{dim-1}`` of the quantum-limited attenuator.

    ``B_l`` lowers photon number by exactly ``l``:
    ``<m|B_l|m+l> = sqrt(binom(m+l, l)) (1-lam)^(l/2) lam^(m/2)``.
    """
    _check_lambda(lam)
    dim = _check_dim(dim)
    c = _kraus_coefficients(float(lam), dim, dim)
    ops = np.zeros((dim, dim, dim), dtype=complex)
    for l in range(dim):
        m = np.arange(dim - l)
        ops[l, m, m + l] = c[l, m]
    ops.setflags(write=False)
    return KrausSet(ops, float(lam))


@lru_cache(maxsize=128)
def amplifier_kraus(kappa: float, in_dim: int, out_dim: int) -> KrausSet:
    """Kraus set of the quantum-limited amplifier, truncated to ``out_dim`` output levels.

    Uses the attenuator/amplifier duality: the amplifier of gain ``kappa`` is
    ``kappa`` times the dual of the attenuator of transmissivity ``1/kappa``,
    so its Kraus operators are ``B_l(1/kappa)^dagger / sqrt(kappa)``.
    """
    if not kappa >= 1:
        raise ContractViolation(f"amplifier gain must be >= 1, got {kappa}")
    in_dim, out_dim = _check_dim(in_dim), _check_dim(out_dim)
    if out_dim < in_dim:
        raise InvalidDimensionError("amplifier output dimension must be >= input dimension")
    mu = 1.0 / kappa
    c = _kraus_coefficients(float(mu), out_dim, in_dim) / math.sqrt(kappa)
    ops = np.zeros((out_dim, out_dim, in_dim), dtype=complex)
    for l in range(out_dim):
        m = np.arange(min(in_dim, out_dim - l))
        ops[l, m + l, m] = c[l, m]
    ops.setflags(write=False)
    return KrausSet(ops, float(kappa))


def default_output_dim(kappa: float, in_dim: int) -> int:
    return int(math.ceil(kappa * in_dim)) + 20


def amplifier_level_deficits(kappa: float, in_dim: int, out_dim: int) -> np.ndarray:
    """Weight lost above ``out_dim - 1`` when amplifying each input Fock state.

    Amplifying ``|n>`` adds a negative-binomial number of photons
    (``n + 1`` successes, success probability ``1/kappa``); the loss is its
    tail beyond ``out_dim - 1 - n``, evaluated as a regularized incomplete
    beta function so it stays accurate far below machine epsilon.
    """
    n = np.arange(in_dim)
    first_lost = out_dim - n  # smallest number of added photons that leaves the space
    return betainc(first_lost, n + 1, 1.0 - 1.0 / kappa)


def amplifier_output_dim(kappa: float, in_dim: int, max_deficit: float = 1e-12) -> int:
    """Smallest output dimension, at least the default one, keeping every level's loss below ``max_deficit``."""
    out = default_output_dim(kappa, in_dim)
    while amplifier_level_deficits(kappa, in_dim, out).max() > max_deficit:
        out = int(math.ceil(out * 1.25))
    return out


def apply_attenuator(X, lam: float) -> np.ndarray:
    """Quantum-limited attenuator of transmissivity ``lam``.

    Evaluated through ``sum_l (1-lam)^l / l! lam^(N/2) a^l X a^dag^l lam^(N/2)``,
    independently of :func:`attenuator_kraus`.  The sum terminates at
    ``l = dim - 1`` on the truncated space.
    """
    _check_lambda(lam)
    X = as_operator(X)
    dim = X.shape[0]
    a = annihilation(dim)
    s = np.power(float(lam), np.arange(dim) / 2.0)
    out = np.zeros_like(X)
    a_l = np.eye(dim, dtype=complex)   # a^l / sqrt(l!)
    weight = 1.0                       # (1 - lam)^l
    for l in range(dim):
        if l:
            a_l = (a @ a_l) / math.sqrt(l)
            weight *= 1.0 - lam
        if weight == 0.0:
            break
        out += weight * (a_l @ X @ a_l.conj().T)
    return s[:, None] * out * s[None, :]


def apply_amplifier(X, kappa: float, output_dim: int | None = None, *,
                    max_deficit: float = DEFAULT_MAX_DEFICIT, return_deficit: bool = False):
    """Quantum-limited amplifier of gain ``kappa``.

    Parameters
    ----------
    X : array_like
        ``(D, D)`` input operator.
    kappa : float
        Gain, ``>= 1``.
    output_dim : int, optional
        Number of output levels; defaults to ``ceil(kappa * D) + 20``.
    max_deficit : float
        Upper bound on the trace weight allowed to leak above the output
        space. Exceeding it raises :class:`TruncationError`.
    return_deficit : bool
        Also return the realized deficit ``sum_n |X_nn| * loss_n``, which
        equals ``Tr X - Tr output`` for positive inputs.
    """
    X = as_operator(X)
    d = X.shape[0]
    out_dim = default_output_dim(kappa, d) if output_dim is None else output_dim
    kraus = amplifier_kraus(kappa, d, out_dim)
    loss = amplifier_level_deficits(kappa, d, out_dim)
    deficit = float(np.sum(np.abs(np.diagonal(X)) * loss))
    if deficit > max_deficit:
        raise TruncationError(
            f"amplifier output truncated at {out_dim} levels loses {deficit:.2e} > {max_deficit:.2e}")
    Y = kraus.apply(X)
    return (Y, deficit) if return_deficit else Y


def apply_gauge_covariant(X, params: GaugeCovariantParams, output_dim: int | None = None, *,
                          max_deficit: float = DEFAULT_MAX_DEFICIT, return_deficit: bool = False):
    """Apply the channel ``amplifier(kappa) o attenuator(eta)``.

    With ``kappa == 1`` there is no amplification stage and the output has
    the input dimension (or ``output_dim``, by zero-padding).
    """
    Y = apply_attenuator(X, params.eta)
    if params.kappa == 1.0:
        if output_dim is not None:
            Y = embed(Y, output_dim)
        return (Y, 0.0) if return_deficit else Y
    return apply_amplifier(Y, params.kappa, output_dim, max_deficit=max_deficit,
                           return_deficit=return_deficit)


def gauge_covariant_kraus(params: GaugeCovariantParams, dim: int, output_dim: int | None = None) -> KrausSet:
    """Kraus set of the whole channel (products of amplifier and attenuator operators)."""
    att = attenuator_kraus(params.eta, dim)
    if params.kappa == 1.0:
        if output_dim is None or output_dim == dim:
            return att
        pad = np.zeros((len(att), output_dim, dim), dtype=complex)
        pad[:, :dim, :] = att.operators
        return KrausSet(pad, att.lam)
    out = default_output_dim(params.kappa, dim) if output_dim is None else output_dim
    ks = att.then(amplifier_kraus(params.kappa, dim, out))
    return KrausSet(ks.operators, params.lam)


def lindblad_apply(X) -> np.ndarray:
    """Attenuator generator ``a X a^dag - (N X + X N) / 2``."""
    X = as_operator(X)
    dim = X.shape[0]
    a = annihilation(dim)
    n = np.arange(dim, dtype=float)
    return a @ X @ a.conj().T - 0.5 * (n[:, None] * X + X * n[None, :])


def evolve_lindblad(X, t: float, dt: float = DEFAULT_DT) -> np.ndarray:
    """Integrate ``dX/dt = L(X)`` up to time ``t`` with fixed-step RK4.

    The number of steps is ``ceil(t / dt)`` and the step is shrunk so the
    last one lands exactly on ``t``.  The result approximates the attenuator
    of transmissivity ``exp(-t)``.
    """
    if not dt > 0:
        raise ContractViolation(f"time step must be positive, got {dt}")
    if not t >= 0:
        raise ContractViolation(f"evolution time must be >= 0, got {t}")
    X = as_operator(X).copy()
    steps = int(math.ceil(t / dt - 1e-12)) if t > 0 else 0
    if steps == 0:
        return X
    h = t / steps
    for _ in range(steps):
        X = rk4_step(X, h)
    return X


def rk4_step(X: np.ndarray, h: float) -> np.ndarray:
    k1 = lindblad_apply(X)
    k2 = lindblad_apply(X + 0.5 * h * k1)
    k3 = lindblad_apply(X + 0.5 * h * k2)
    k4 = lindblad_apply(X + h * k3)
    return X + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def dual_apply(Y, channel) -> np.ndarray:
    """Hilbert-Schmidt dual ``sum_l K_l^dagger Y K_l``.

    ``channel`` is a :class:`KrausSet`, or a ``(params, dim)`` /
    ``(params, dim, output_dim)`` tuple describing a gauge-covariant channel.
    """
    if not isinstance(channel, KrausSet):
        channel = gauge_covariant_kraus(*channel)
    return channel.dual(Y)


def phase_rotation(theta: float, dim: int) -> np.ndarray:
    """Phase rotation ``exp(i theta N)``."""
    return np.diag(np.exp(1j * theta * np.real(np.diagonal(number(dim)))))
