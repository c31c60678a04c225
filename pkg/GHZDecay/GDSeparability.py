# GDSeparability.py
"""
Numerical certificate that the amplitude-damped GHZ state is fully
separable at its critical probability.

At p_c the state splits as |alpha|^2 |0..0><0..0| + rho_s, and rho_s is
obtained (up to a positive scalar) by applying the local filter A_1 to
every qubit of the GHZ-diagonal state sigma. sigma is checked to be PPT
across the cuts; its full separability itself rests on the GHZ-diagonal
criterion and is not re-derived here.
"""

from dataclasses import dataclass
import logging

import numpy as np
from scipy import linalg

from .GDChannels import ChannelFamily, ChannelSpec, check_probability
from .GDConfig import Config
from .GDCriticality import esd_probability_ad
from .GDErrors import DomainError, StructuralError
from .GDOracle import (
    DenseState, all_bipartitions, apply_local_kraus, build_initial, check_capacity,
    evolve_dense, hermitian_eigenvalues, negativity_dense, representative_subsets
)
from .GDState import GHZParams

logger = logging.getLogger("GHZDecay.Separability")

_AD = ChannelSpec(ChannelFamily.AD)


@dataclass(frozen=True)
class SeparabilityCertificate:
    """
    Outcome of the reconstruction check.

    scale is fitted by least squares; expected_scale = 2^-N delta^(2N) is
    the value the construction predicts. reconstruction_residual is the max
    entrywise deviation relative to the Frobenius norm of scale * rho_s.
    """
    N: int
    p_c: float
    scale: float
    expected_scale: float
    reconstruction_residual: float
    sigma_ppt_ok: bool
    delta: float
    degenerate: bool = False

    @property
    def is_valid(self) -> bool:
        return self.sigma_ppt_ok and self.reconstruction_residual <= Config.CERTIFICATE_TOL

    def to_dict(self) -> dict:
        return {
            'N': self.N, 'p_c': self.p_c, 'scale': self.scale,
            'expected_scale': self.expected_scale,
            'reconstruction_residual': self.reconstruction_residual,
            'sigma_ppt_ok': self.sigma_ppt_ok, 'delta': self.delta,
            'degenerate': self.degenerate, 'valid': self.is_valid,
        }


def _require_both_amplitudes(params: GHZParams) -> None:
    if params.is_product:
        raise DomainError("sigma needs alpha != 0 and beta != 0")


def sigma_state(params: GHZParams) -> DenseState:
    """
    GHZ-diagonal sigma with diagonal 2^-N |beta|^2 and corner
    2^-N |beta|^2 |beta/alpha| (alpha/beta).

    Returns:
        Unnormalized DenseState of trace |beta|^2
    """
    _require_both_amplitudes(params)
    check_capacity(params.N)
    dim = 2 ** params.N
    weight = params.beta_sq / dim
    corner = weight * (abs(params.beta) / abs(params.alpha)) * (params.alpha / params.beta)
    matrix = np.eye(dim, dtype=np.complex128) * weight
    matrix[0, -1] = corner
    matrix[-1, 0] = np.conj(corner)
    return DenseState(matrix, params.N, declared_trace=params.beta_sq)


def povm_element(p_c: float, delta: float = 1.0) -> np.ndarray:
    """
    Local filter A_1 = delta (sqrt(p_c)|0><0| + sqrt(1-p_c)|1><1|).

    Args:
        p_c: critical probability in [0, 1]
        delta: normalization, must keep A_1^dag A_1 <= 1
    Returns:
        Diagonal 2x2 complex matrix
    """
    p_c = check_probability(p_c)
    if not np.isfinite(delta) or delta <= 0.0:
        raise DomainError(f"delta must be positive, got {delta!r}")
    A1 = delta * np.diag([np.sqrt(p_c), np.sqrt(1.0 - p_c)]).astype(np.complex128)
    largest = float(hermitian_eigenvalues(A1.conj().T @ A1)[-1])
    if largest > 1.0 + Config.KRAUS_TOL:
        raise DomainError(f"delta={delta} gives A_1^dag A_1 with eigenvalue {largest} > 1")
    return A1


def povm_complement(A1: np.ndarray) -> np.ndarray:
    """Second POVM element A_2 = (1 - A_1^dag A_1)^(1/2)"""
    A1 = np.asarray(A1, dtype=np.complex128)
    rest = np.eye(2) - A1.conj().T @ A1
    if hermitian_eigenvalues(rest)[0] < -Config.KRAUS_TOL:
        raise DomainError("A_1^dag A_1 exceeds the identity, no complementary element")
    return np.asarray(linalg.sqrtm(rest), dtype=np.complex128)


def residual_state(params: GHZParams, p: float) -> DenseState:
    """
    rho_s = rho_AD(p) - |alpha|^2 |0..0><0..0|.

    Raises:
        StructuralError: rho_s has an eigenvalue below -Config.NEGATIVITY_TOL
    """
    p = check_probability(p)
    rho = evolve_dense(build_initial(params), _AD, p)
    matrix = rho.matrix.copy()
    matrix[0, 0] -= params.alpha_sq
    rho_s = DenseState(matrix, params.N, declared_trace=1.0 - params.alpha_sq)
    lowest = float(hermitian_eigenvalues(rho_s.matrix)[0])
    if lowest < -Config.NEGATIVITY_TOL:
        raise StructuralError(f"rho_s has eigenvalue {lowest:.3e} at p={p}")
    return rho_s


def _sigma_is_ppt(sigma: DenseState) -> bool:
    n = sigma.n_qubits
    subsets = all_bipartitions(n) if n <= Config.SIGMA_FULL_PPT_MAX_N else representative_subsets(n)
    for subset in subsets:
        result = negativity_dense(sigma, subset)
        if result.min_eigenvalue < -Config.NEGATIVITY_TOL:
            logger.warning(f"sigma is NPT across {subset.indices}: min eigenvalue {result.min_eigenvalue:.3e}")
            return False
    return True


def verify_full_separability(params: GHZParams, delta: float = 1.0) -> SeparabilityCertificate:
    """
    Filter sigma with A_1 on every qubit and compare with rho_s at p_c.

    Args:
        params: GHZ parameters with alpha != 0 and beta != 0
        delta: POVM normalization; it only rescales the result
    Returns:
        SeparabilityCertificate; degenerate when |alpha| >= |beta| (p_c = 1)
    """
    _require_both_amplitudes(params)
    check_capacity(params.N)
    n = params.N
    p_c = esd_probability_ad(params).p_c
    A1 = povm_element(p_c, delta)
    povm_complement(A1)
    sigma = sigma_state(params)
    filtered = sigma.matrix
    for qubit in range(n):
        filtered = apply_local_kraus(filtered, n, [A1], qubit)
    rho_s = residual_state(params, p_c).matrix
    scale = float(np.real(np.vdot(rho_s, filtered)) / np.real(np.vdot(rho_s, rho_s)))
    norm = abs(scale) * float(np.linalg.norm(rho_s))
    deviation = float(np.max(np.abs(filtered - scale * rho_s)))
    residual = deviation / norm if norm > 0.0 else np.inf
    certificate = SeparabilityCertificate(
        N=n,
        p_c=p_c,
        scale=scale,
        expected_scale=delta ** (2 * n) / 2 ** n,
        reconstruction_residual=residual,
        sigma_ppt_ok=_sigma_is_ppt(sigma),
        delta=float(delta),
        degenerate=abs(params.alpha) >= abs(params.beta),
    )
    if not certificate.is_valid:
        logger.warning(f"certificate failed for N={n}: residual {residual:.3e}, "
                       f"sigma PPT {certificate.sigma_ppt_ok}")
    else:
        logger.info(f"N={n}: rho_s reconstructed at p_c={p_c:.12f}, residual {residual:.3e}")
    return certificate
