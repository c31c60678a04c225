# GDNegativity.py
"""
Closed-form partial-transpose spectrum of the evolved GHZ state.

Transposing a size-k subset moves the corner coherence onto the pair of
basis strings (weight k, weight N-k), so the partial transpose is diagonal
apart from one 2x2 block

    [[lambda_k, c], [c^*, lambda_{N-k}]]

whose smaller eigenvalue Lambda_k = delta_k - sqrt(delta_k^2 - Delta_k) is
the only one that can be negative.
"""

from dataclasses import dataclass
import logging
import math
import sys
from typing import List, Sequence

import numpy as np

from .GDChannels import ChannelSpec, check_probability, coherence_exponent
from .GDConfig import Config
from .GDErrors import DomainError
from .GDState import (
    GHZParams, SignedLog, SymmetricEvolvedState, _lambda_values, _log_lambda_values,
    log_abs_offdiag
)

logger = logging.getLogger("GHZDecay.Negativity")

_LOG2 = math.log(2.0)
_TINY = sys.float_info.min


@dataclass(frozen=True)
class PTSpectrumResult:
    """
    Spectrum summary for the k:N-k cut.

    Lambda_k is the coherence-block eigenvalue; min_eigenvalue is the
    smallest eigenvalue of the whole partial transpose, which equals
    Lambda_k whenever Lambda_k <= 0 and can be a bare diagonal coefficient
    otherwise. log_abs_lambda and sign keep Lambda_k exact when the float
    value underflows.
    """
    k: int
    Lambda_k: float
    negativity: float
    delta_k: float
    Delta_k: float
    min_eigenvalue: float
    sign: int
    log_abs_lambda: float

    @property
    def is_entangled(self) -> bool:
        return self.sign < 0

    def as_signed_log(self) -> SignedLog:
        return SignedLog(self.sign, self.log_abs_lambda)


def _log_diff_exp(a: float, b: float) -> float:
    """log |e^a - e^b|"""
    hi, lo = max(a, b), min(a, b)
    if hi == -math.inf or hi == lo:
        return -math.inf
    return hi + math.log1p(-math.exp(lo - hi))


def _block_plain(lam_k: float, lam_nk: float, coherence_sq: float):
    delta = 0.5 * (lam_k + lam_nk)
    Delta = lam_k * lam_nk - coherence_sq
    # delta^2 - Delta written in its manifestly nonnegative form
    half_gap = 0.5 * (lam_k - lam_nk)
    root = math.sqrt(half_gap * half_gap + coherence_sq)
    denom = delta + root
    # Delta / (delta + root) avoids cancelling delta against root
    value = Delta / denom if denom > 0.0 else 0.0
    return delta, Delta, SignedLog.from_value(value)


def _block_log(log_k: float, log_nk: float, log_coherence_sq: float):
    log_delta = float(np.logaddexp(log_k, log_nk)) - _LOG2
    log_product = log_k + log_nk
    if log_product > log_coherence_sq:
        sign = 1
    elif log_product < log_coherence_sq:
        sign = -1
    else:
        sign = 0
    log_abs_Delta = _log_diff_exp(log_product, log_coherence_sq)
    log_half_gap = _log_diff_exp(log_k, log_nk) - _LOG2
    # sqrt(delta^2 - Delta) = sqrt(((lambda_k - lambda_{N-k}) / 2)^2 + |c|^2)
    log_root = 0.5 * float(np.logaddexp(2.0 * log_half_gap, log_coherence_sq))
    log_denom = float(np.logaddexp(log_delta, log_root))
    if sign == 0 or log_denom == -math.inf:
        result = SignedLog(0, -math.inf)
    else:
        result = SignedLog(sign, log_abs_Delta - log_denom)
    delta = math.exp(log_delta) if log_delta > -math.inf else 0.0
    Delta = sign * math.exp(log_abs_Delta) if sign else 0.0
    return delta, Delta, result


def _block_checked(channel: ChannelSpec, params: GHZParams, p: float, k: int,
                   lam_k: float, lam_nk: float, coherence_sq: float):
    """
    Plain-float block, redone in log form when lambda_k lambda_{N-k} or |c|^2
    is nonzero but below the normal float range.
    """
    product = lam_k * lam_nk
    if product >= _TINY and coherence_sq >= _TINY:
        return _block_plain(lam_k, lam_nk, coherence_sq)
    log_k, log_nk = _log_lambda_values(channel, params, p, np.array([k, params.N - k]))
    log_coherence_sq = 2.0 * log_abs_offdiag(channel, params, p)
    log_product = float(log_k) + float(log_nk)
    if ((product < _TINY and log_product > -math.inf)
            or (coherence_sq < _TINY and log_coherence_sq > -math.inf)):
        return _block_log(float(log_k), float(log_nk), log_coherence_sq)
    return _block_plain(lam_k, lam_nk, coherence_sq)


def _check_cut(n_qubits: int, k: int) -> int:
    if isinstance(k, bool) or int(k) != k or not 1 <= k <= n_qubits // 2:
        raise DomainError(f"k must be an integer in [1, {n_qubits // 2}], got {k!r}")
    return int(k)


def _floor_weights(n_qubits: int) -> np.ndarray:
    # Weights with a basis string outside the coherence block; for N=2 both
    # weight-1 strings sit in the block.
    if n_qubits == 2:
        return np.array([0, 2])
    return np.arange(n_qubits + 1)


def _assemble(k: int, delta: float, Delta: float, block: SignedLog,
              floor: SignedLog) -> PTSpectrumResult:
    Lambda = block.value
    if block.sign <= 0:
        minimum = Lambda
    elif floor.sign == 0 or floor.log_abs < block.log_abs:
        minimum = floor.value
    else:
        minimum = Lambda
    return PTSpectrumResult(
        k=k,
        Lambda_k=Lambda,
        negativity=max(0.0, -Lambda),
        delta_k=delta,
        Delta_k=Delta,
        min_eigenvalue=minimum,
        sign=block.sign,
        log_abs_lambda=block.log_abs,
    )


def min_pt_eigenvalue(state: SymmetricEvolvedState, k: int) -> PTSpectrumResult:
    """
    Minimal partial-transpose eigenvalue for the k:N-k cut.

    Args:
        state: evolved state
        k: size of the smaller side, 1..floor(N/2)
    Returns:
        PTSpectrumResult with negativity = max(0, -Lambda_k)
    """
    k = _check_cut(state.N, k)
    n = state.N
    weights = _floor_weights(n)
    if state.uses_log_domain:
        delta, Delta, block = _block_log(
            state.log_lambda(k), state.log_lambda(n - k), 2.0 * state.log_abs_offdiag)
        log_floor = float(np.min(state.log_lambdas[weights]))
        floor = SignedLog(0, -math.inf) if log_floor == -math.inf else SignedLog(1, log_floor)
    else:
        delta, Delta, block = _block_checked(
            state.channel, state.params, state.p, k,
            float(state.lambdas[k]), float(state.lambdas[n - k]), abs(state.offdiag) ** 2)
        floor = SignedLog.from_value(float(np.min(state.lambdas[weights])))
    return _assemble(k, delta, Delta, block, floor)


def pt_block_eigenvalue(channel: ChannelSpec, params: GHZParams, p: float, k: int) -> SignedLog:
    """Lambda_k(p) as a signed log, evaluating only lambda_k and lambda_{N-k}"""
    p = check_probability(p)
    k = _check_cut(params.N, k)
    ks = np.array([k, params.N - k])
    if Config.use_log_domain(params.N):
        log_k, log_nk = _log_lambda_values(channel, params, p, ks)
        return _block_log(float(log_k), float(log_nk), 2.0 * log_abs_offdiag(channel, params, p))[2]
    lam_k, lam_nk = _lambda_values(channel, params, p, ks)
    decay = (1.0 - p) ** (coherence_exponent(channel) * params.N)
    return _block_checked(channel, params, p, k, float(lam_k), float(lam_nk),
                          (params.abs_ab * decay) ** 2)[2]


def min_pt_eigenvalue_at(channel: ChannelSpec, params: GHZParams, p: float, k: int) -> PTSpectrumResult:
    """Full PTSpectrumResult at (channel, p) without building a state object"""
    p = check_probability(p)
    k = _check_cut(params.N, k)
    n = params.N
    weights = _floor_weights(n)
    if Config.use_log_domain(n):
        log_lams = _log_lambda_values(channel, params, p, np.arange(n + 1))
        delta, Delta, block = _block_log(
            float(log_lams[k]), float(log_lams[n - k]), 2.0 * log_abs_offdiag(channel, params, p))
        log_floor = float(np.min(log_lams[weights]))
        floor = SignedLog(0, -math.inf) if log_floor == -math.inf else SignedLog(1, log_floor)
    else:
        lams = _lambda_values(channel, params, p, np.arange(n + 1))
        decay = (1.0 - p) ** (coherence_exponent(channel) * n)
        delta, Delta, block = _block_checked(
            channel, params, p, k, float(lams[k]), float(lams[n - k]), (params.abs_ab * decay) ** 2)
        floor = SignedLog.from_value(float(np.min(lams[weights])))
    return _assemble(k, delta, Delta, block, floor)


def pd_min_eigenvalue(params: GHZParams, p: float, k: int) -> float:
    """
    Dephasing closed form -|alpha beta| (1-p)^N.

    The value does not depend on k; the argument is kept for symmetry with
    the other families.
    """
    p = check_probability(p)
    return -params.abs_ab * (1.0 - p) ** params.N


def balanced_leading_term(channel: ChannelSpec, params: GHZParams, p: float) -> float:
    """Leading-order balanced-cut eigenvalue -|alpha beta| (1-p)^{eN}"""
    p = check_probability(p)
    return -params.abs_ab * (1.0 - p) ** (coherence_exponent(channel) * params.N)


def check_partition_ordering(profile: Sequence[PTSpectrumResult]) -> List[int]:
    """
    Cuts k where |Lambda_k| < |Lambda_{k-1}| although every Lambda is negative.

    Violations are logged, never corrected.
    """
    if not profile or any(result.sign >= 0 for result in profile):
        return []
    violations = []
    for previous, current in zip(profile, profile[1:]):
        # compare magnitudes in log form with a relative slack of ~1e-12
        if current.log_abs_lambda < previous.log_abs_lambda - 1e-12:
            violations.append(current.k)
    if violations:
        logger.warning(f"partition ordering |Lambda_k| nondecreasing violated at k={violations}")
    return violations


def negativity_profile(state: SymmetricEvolvedState) -> List[PTSpectrumResult]:
    """PT spectrum results for k = 1..floor(N/2) in ascending k"""
    profile = [min_pt_eigenvalue(state, k) for k in range(1, state.N // 2 + 1)]
    check_partition_ordering(profile)
    return profile
