# GDState.py
"""
Generalized GHZ states and their exact evolved density matrices.

Every channel in GDChannels maps alpha|0..0> + beta|1..1> to a state that
is diagonal in the computational basis except for the two corner
coherences |0..0><1..1| and its conjugate. The diagonal only depends on the
Hamming weight k of the basis string, so the whole 2^N x 2^N matrix is
stored as N+1 per-pattern coefficients lambda_k plus one complex number.
"""

from dataclasses import dataclass, field
import cmath
import logging
import math
from typing import NamedTuple, Optional, Union

import numpy as np
from scipy.special import gammaln, logsumexp, xlogy

from .GDChannels import (
    ChannelSpec, check_probability, coherence_exponent, population_coefficients
)
from .GDConfig import Config
from .GDErrors import CapacityError, DomainError, StructuralError

logger = logging.getLogger("GHZDecay.State")


class SignedLog(NamedTuple):
    """Real number stored as sign and log of its magnitude"""
    sign: int
    log_abs: float

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs) if self.log_abs < 709.0 else self.sign * math.inf

    @classmethod
    def from_value(cls, value: float) -> 'SignedLog':
        if value == 0.0:
            return cls(0, -math.inf)
        return cls(1 if value > 0 else -1, math.log(abs(value)))


def _log_or_neg_inf(value: float) -> float:
    return math.log(value) if value > 0.0 else -math.inf


@dataclass(frozen=True)
class GHZParams:
    """Initial state alpha|0>^N + beta|1>^N"""
    alpha: complex
    beta: complex
    N: int

    def __post_init__(self):
        if isinstance(self.N, bool) or int(self.N) != self.N:
            raise DomainError(f"N must be an integer, got {self.N!r}")
        object.__setattr__(self, 'N', int(self.N))
        object.__setattr__(self, 'alpha', complex(self.alpha))
        object.__setattr__(self, 'beta', complex(self.beta))
        if self.N < Config.MIN_QUBITS:
            raise DomainError(f"N must be at least {Config.MIN_QUBITS}, got {self.N}")
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > Config.NORMALIZATION_TOL:
            raise DomainError(f"|alpha|^2 + |beta|^2 = {norm!r}, expected 1")

    @classmethod
    def from_alpha_sq(cls, alpha_sq: float, N: int, alpha_phase: float = 0.0,
                      beta_phase: float = 0.0) -> 'GHZParams':
        """Build from |alpha|^2 and optional phases (radians)"""
        if not 0.0 <= alpha_sq <= 1.0:
            raise DomainError(f"|alpha|^2 must lie in [0, 1], got {alpha_sq}")
        alpha = cmath.rect(math.sqrt(alpha_sq), alpha_phase)
        beta = cmath.rect(math.sqrt(1.0 - alpha_sq), beta_phase)
        return cls(alpha, beta, N)

    @classmethod
    def normalized(cls, alpha: complex, beta: complex, N: int) -> 'GHZParams':
        """Rescale (alpha, beta) onto the unit sphere"""
        norm = math.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
        if norm == 0.0:
            raise DomainError("alpha and beta cannot both vanish")
        return cls(alpha / norm, beta / norm, N)

    @property
    def alpha_sq(self) -> float:
        return abs(self.alpha) ** 2

    @property
    def beta_sq(self) -> float:
        return abs(self.beta) ** 2

    @property
    def abs_ab(self) -> float:
        """|alpha beta|, the initial negativity of every cut"""
        return abs(self.alpha) * abs(self.beta)

    @property
    def coherence(self) -> complex:
        """alpha beta^*, the initial corner coherence"""
        return self.alpha * self.beta.conjugate()

    @property
    def is_product(self) -> bool:
        return self.alpha == 0 or self.beta == 0

    def to_dict(self) -> dict:
        return {
            'alpha': [self.alpha.real, self.alpha.imag],
            'beta': [self.beta.real, self.beta.imag],
            'N': self.N,
        }


def balanced_k(n_qubits: int) -> int:
    """Most balanced cut size: N/2 for even N, (N-1)/2 for odd N"""
    return n_qubits // 2


def _check_k(params: GHZParams, k: int) -> int:
    if isinstance(k, bool) or int(k) != k or not 0 <= k <= params.N:
        raise DomainError(f"k must be an integer in [0, {params.N}], got {k!r}")
    return int(k)


def _lambda_values(channel: ChannelSpec, params: GHZParams, p: float,
                   k: Union[int, np.ndarray]) -> np.ndarray:
    x, y, w, z = population_coefficients(channel, p).as_tuple()
    k = np.asarray(k, dtype=np.int64)
    n_minus_k = params.N - k
    return (params.alpha_sq * np.power(x, n_minus_k) * np.power(y, k)
            + params.beta_sq * np.power(w, n_minus_k) * np.power(z, k))


def _log_lambda_values(channel: ChannelSpec, params: GHZParams, p: float,
                       k: Union[int, np.ndarray]) -> np.ndarray:
    x, y, w, z = population_coefficients(channel, p).as_tuple()
    k = np.asarray(k, dtype=np.float64)
    n_minus_k = params.N - k
    with np.errstate(divide='ignore'):
        first = _log_or_neg_inf(params.alpha_sq) + xlogy(n_minus_k, x) + xlogy(k, y)
        second = _log_or_neg_inf(params.beta_sq) + xlogy(n_minus_k, w) + xlogy(k, z)
        return np.logaddexp(first, second)


def lambda_coefficient(channel: ChannelSpec, params: GHZParams, p: float, k: int) -> float:
    """
    Coefficient of each diagonal projector with exactly k qubits in |1>.

    Args:
        channel: channel acting on every qubit
        params: initial GHZ parameters
        p: exchange probability
        k: Hamming weight, 0..N
    Returns:
        lambda_k(p) >= 0
    """
    p = check_probability(p)
    k = _check_k(params, k)
    return float(_lambda_values(channel, params, p, k))


def log_lambda_coefficient(channel: ChannelSpec, params: GHZParams, p: float, k: int) -> SignedLog:
    """Underflow-safe lambda_k as a signed log (log-sum-exp of its two terms)"""
    p = check_probability(p)
    k = _check_k(params, k)
    log_value = float(_log_lambda_values(channel, params, p, k))
    if log_value == -math.inf:
        return SignedLog(0, -math.inf)
    return SignedLog(1, log_value)


def log_abs_offdiag(channel: ChannelSpec, params: GHZParams, p: float) -> float:
    """log |alpha beta| + e N log(1-p), e = 1/2 (GAD family) or 1 (D, PD)"""
    if params.is_product:
        return -math.inf
    with np.errstate(divide='ignore'):
        decay = coherence_exponent(channel) * params.N * float(np.log1p(-p))
    return math.log(params.abs_ab) + decay


def log_binomial(n: int, k: Union[int, np.ndarray]) -> np.ndarray:
    k = np.asarray(k, dtype=np.float64)
    return gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0)


@dataclass(frozen=True)
class SymmetricEvolvedState:
    """
    O(N) representation of the evolved 2^N x 2^N density matrix.

    lambdas[k] is the coefficient of every weight-k diagonal projector (not
    the aggregated weight-k probability, which is C(N,k) lambdas[k]).
    log_lambdas is populated when N exceeds Config.LOG_DOMAIN_THRESHOLD or
    when requested; lambdas may then underflow to zero.
    """
    params: GHZParams
    channel: ChannelSpec
    p: float
    lambdas: np.ndarray
    offdiag: complex
    log_abs_offdiag: float
    log_lambdas: Optional[np.ndarray] = field(default=None)

    @property
    def N(self) -> int:
        return self.params.N

    @property
    def uses_log_domain(self) -> bool:
        return self.log_lambdas is not None

    def log_lambda(self, k: int) -> float:
        if self.log_lambdas is not None:
            return float(self.log_lambdas[k])
        return _log_or_neg_inf(float(self.lambdas[k]))

    def weight_probabilities(self) -> np.ndarray:
        """Aggregated probabilities C(N,k) lambda_k of finding k excitations"""
        ks = np.arange(self.N + 1)
        if self.log_lambdas is not None:
            return np.exp(log_binomial(self.N, ks) + self.log_lambdas)
        return np.exp(log_binomial(self.N, ks)) * self.lambdas

    def trace(self) -> float:
        if self.log_lambdas is not None:
            ks = np.arange(self.N + 1)
            return float(np.exp(logsumexp(log_binomial(self.N, ks) + self.log_lambdas)))
        return float(np.sum(self.weight_probabilities()))

    def check_invariants(self) -> None:
        """Raise StructuralError if positivity or normalization fails"""
        if np.any(self.lambdas < 0.0):
            raise StructuralError(f"negative diagonal coefficient at p={self.p}")
        trace = self.trace()
        if abs(trace - 1.0) > 1e-10:
            raise StructuralError(f"trace {trace!r} differs from 1 at p={self.p}")
        if self.params.is_product:
            return
        log_corner = self.log_lambda(0) + self.log_lambda(self.N)
        if self.log_lambdas is not None:
            if 2.0 * self.log_abs_offdiag > log_corner + 1e-9:
                raise StructuralError(f"coherence block not positive at p={self.p}")
        elif abs(self.offdiag) ** 2 > self.lambdas[0] * self.lambdas[self.N] + 1e-12:
            raise StructuralError(f"coherence block not positive at p={self.p}")


def evolve(params: GHZParams, channel: ChannelSpec, p: float,
           log_domain: Optional[bool] = None) -> SymmetricEvolvedState:
    """
    Exact state after applying the channel to every qubit.

    Args:
        params: initial GHZ parameters
        channel: channel acting on every qubit
        p: exchange probability
        log_domain: force (True) or suppress (False) the signed-log companion;
            None follows Config.LOG_DOMAIN_THRESHOLD
    Returns:
        SymmetricEvolvedState satisfying positivity and unit trace
    """
    p = check_probability(p)
    ks = np.arange(params.N + 1)
    lambdas = _lambda_values(channel, params, p, ks)
    lambdas.setflags(write=False)
    if log_domain is None:
        log_domain = Config.use_log_domain(params.N)
    log_lambdas = None
    if log_domain:
        log_lambdas = _log_lambda_values(channel, params, p, ks)
        log_lambdas.setflags(write=False)
    decay = (1.0 - p) ** (coherence_exponent(channel) * params.N)
    state = SymmetricEvolvedState(
        params=params,
        channel=channel,
        p=p,
        lambdas=lambdas,
        offdiag=params.coherence * decay,
        log_abs_offdiag=log_abs_offdiag(channel, params, p),
        log_lambdas=log_lambdas,
    )
    state.check_invariants()
    return state


def hamming_weights(n_qubits: int) -> np.ndarray:
    """Number of ones in every basis index 0..2^N-1 (qubit 0 is the top bit)"""
    idx = np.arange(2 ** n_qubits)
    weights = np.zeros_like(idx)
    for q in range(n_qubits):
        weights += (idx >> q) & 1
    return weights


def dense_from_symmetric(state: SymmetricEvolvedState):
    """Expand the O(N) representation into an explicit DenseState"""
    from .GDOracle import DenseState

    limit = Config.get_dense_limit()
    if state.N > limit:
        raise CapacityError(state.N, limit)
    matrix = np.diag(np.asarray(state.lambdas, dtype=np.complex128)[hamming_weights(state.N)])
    matrix[0, -1] = state.offdiag
    matrix[-1, 0] = np.conj(state.offdiag)
    return DenseState(matrix=matrix, n_qubits=state.N)
