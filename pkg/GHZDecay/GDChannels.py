# GDChannels.py
"""
Single-qubit noise channels acting independently on every qubit.

Four families are modelled: generalized amplitude damping (with the
zero-temperature AD and the purely diffusive limits as named members),
depolarization and phase damping. Every channel is evaluated at a
caller-supplied exchange probability p; converting a physical time into p
is a separate, explicit step.
"""

from dataclasses import dataclass
from enum import Enum
import logging
import math
import numbers
from typing import Dict, Tuple

import numpy as np

from .GDConfig import Config
from .GDErrors import DomainError

logger = logging.getLogger("GHZDecay.Channels")

_IDENTITY = np.eye(2, dtype=np.complex128)
_PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
_PROJ_0 = np.array([[1, 0], [0, 0]], dtype=np.complex128)
_PROJ_1 = np.array([[0, 0], [0, 1]], dtype=np.complex128)
_LOWER = np.array([[0, 1], [0, 0]], dtype=np.complex128)  # |0><1|
_RAISE = np.array([[0, 0], [1, 0]], dtype=np.complex128)  # |1><0|


class ChannelFamily(str, Enum):
    """Channel families, valued by their command-line names"""
    AD = "ad"
    GAD = "gad"
    DIFFUSIVE = "diffusive"
    DEPOLARIZING = "depolarizing"
    PHASE_DAMPING = "dephasing"

    @property
    def is_gad_family(self) -> bool:
        """AD, GAD and Diffusive share the GAD Kraus structure"""
        return self in (ChannelFamily.AD, ChannelFamily.GAD, ChannelFamily.DIFFUSIVE)


def _check_non_negative(name: str, value: float) -> None:
    if not isinstance(value, numbers.Real) or math.isnan(value) or value < 0:
        raise DomainError(f"{name} must be a non-negative real, got {value!r}")


def check_probability(p: float) -> float:
    """Validate an exchange probability and return it as a float"""
    if not isinstance(p, numbers.Real) or math.isnan(p) or not 0.0 <= p <= 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p!r}")
    return float(p)


@dataclass(frozen=True)
class ChannelSpec:
    """Tagged channel family with its physical parameters.

    nbar is only meaningful for GAD, gamma for AD/GAD, Gamma for Diffusive
    and rate for the depolarizing and dephasing families (which carry no
    microscopic rate of their own).
    """
    family: ChannelFamily
    nbar: float = 0.0
    gamma: float = 1.0
    Gamma: float = 1.0
    rate: float = 1.0

    def __post_init__(self):
        if not isinstance(self.family, ChannelFamily):
            object.__setattr__(self, 'family', ChannelFamily(self.family))
        for name in ('nbar', 'gamma', 'Gamma', 'rate'):
            value = getattr(self, name)
            _check_non_negative(name, value)
            object.__setattr__(self, name, float(value))
        if math.isinf(self.nbar):
            raise DomainError("nbar must be finite; use the diffusive family for the n̄→∞ limit")
        if self.family is ChannelFamily.AD and self.nbar != 0.0:
            raise DomainError(f"AD is the n̄=0 limit, got nbar={self.nbar}")

    @classmethod
    def parse(cls, name: str, **params: float) -> 'ChannelSpec':
        """Build a spec from a command-line family name"""
        try:
            family = ChannelFamily(name.strip().lower())
        except ValueError:
            choices = ", ".join(f.value for f in ChannelFamily)
            raise DomainError(f"Unknown channel family {name!r} (choose from {choices})")
        if family is not ChannelFamily.GAD:
            params.pop('nbar', None)
        return cls(family=family, **params)

    @property
    def effective_nbar(self) -> float:
        """Mean bath excitation used in the GAD formulas (0 for AD)"""
        return 0.0 if self.family is ChannelFamily.AD else self.nbar

    @property
    def label(self) -> str:
        if self.family is ChannelFamily.GAD:
            return f"gad(nbar={self.nbar:g})"
        return self.family.value

    def probability_at(self, t: float) -> float:
        """Exchange probability reached after time t"""
        if self.family in (ChannelFamily.AD, ChannelFamily.GAD):
            return probability_from_time(self.gamma, self.effective_nbar, t)
        if self.family is ChannelFamily.DIFFUSIVE:
            return diffusive_probability(self.Gamma, t)
        return diffusive_probability(self.rate, t)

    def time_at(self, p: float) -> float:
        """Time needed to reach exchange probability p"""
        if self.family in (ChannelFamily.AD, ChannelFamily.GAD):
            return time_from_probability(self.gamma, self.effective_nbar, p)
        if self.family is ChannelFamily.DIFFUSIVE:
            return diffusive_time(self.Gamma, p)
        return diffusive_time(self.rate, p)

    def to_dict(self) -> Dict[str, float]:
        return {
            'family': self.family.value,
            'nbar': self.effective_nbar,
            'gamma': self.gamma,
            'Gamma': self.Gamma,
            'rate': self.rate,
        }


@dataclass(frozen=True)
class GADCoefficients:
    """Single-qubit population transfer.

    |0><0| -> x|0><0| + y|1><1| and |1><1| -> w|0><0| + z|1><1|.
    """
    x: float
    y: float
    w: float
    z: float

    def __post_init__(self):
        for name in ('x', 'y', 'w', 'z'):
            value = getattr(self, name)
            if not -Config.KRAUS_TOL <= value <= 1.0 + Config.KRAUS_TOL:
                raise DomainError(f"coefficient {name}={value} outside [0, 1]")
        if abs(self.x + self.y - 1.0) > Config.KRAUS_TOL or abs(self.w + self.z - 1.0) > Config.KRAUS_TOL:
            raise DomainError(f"coefficients violate the sum rules: {self}")

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.x, self.y, self.w, self.z)


@dataclass(frozen=True)
class KrausSet:
    """Kraus decomposition of a single-qubit channel"""
    ops: Tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = tuple(np.asarray(op, dtype=np.complex128) for op in self.ops)
        if not ops or any(op.shape != (2, 2) for op in ops):
            raise DomainError("Kraus operators must be a non-empty list of 2x2 matrices")
        object.__setattr__(self, 'ops', ops)

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def completeness_error(self) -> float:
        """Max entrywise deviation of sum E^dag E from the identity"""
        total = sum(op.conj().T @ op for op in self.ops)
        return float(np.max(np.abs(total - _IDENTITY)))

    def is_complete(self, tol: float = Config.KRAUS_TOL) -> bool:
        return self.completeness_error() <= tol

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Apply the map to any 2x2 matrix, Hermitian or not"""
        rho = np.asarray(rho, dtype=np.complex128)
        return sum(op @ rho @ op.conj().T for op in self.ops)

    def superoperator(self) -> np.ndarray:
        """4x4 transfer matrix S with vec(E(rho)) = S vec(rho), row-major vec"""
        return sum(np.kron(op, op.conj()) for op in self.ops)


def probability_from_time(gamma: float, nbar: float, t: float) -> float:
    """
    Exchange probability of the GAD channel after time t.

    Args:
        gamma: zero-temperature dissipation rate (1/time)
        nbar: mean number of bath excitations
        t: elapsed time (may be math.inf)
    Returns:
        p(t) = 1 - exp(-gamma (2 nbar + 1) t / 2)
    """
    _check_non_negative('gamma', gamma)
    _check_non_negative('nbar', nbar)
    _check_non_negative('t', t)
    if gamma == 0.0 or t == 0.0:
        return 0.0
    return float(-math.expm1(-0.5 * gamma * (2.0 * nbar + 1.0) * t))


def diffusive_probability(Gamma: float, t: float) -> float:
    """Exchange probability of the purely diffusive channel, 1 - exp(-Gamma t)"""
    _check_non_negative('Gamma', Gamma)
    _check_non_negative('t', t)
    if Gamma == 0.0 or t == 0.0:
        return 0.0
    return float(-math.expm1(-Gamma * t))


def time_from_probability(gamma: float, nbar: float, p: float) -> float:
    """Inverse of probability_from_time; p = 1 maps to infinity"""
    _check_non_negative('gamma', gamma)
    _check_non_negative('nbar', nbar)
    p = check_probability(p)
    if p == 0.0:
        return 0.0
    if gamma == 0.0:
        raise DomainError("p > 0 is never reached with gamma = 0")
    if p == 1.0:
        return math.inf
    return -2.0 * math.log1p(-p) / (gamma * (2.0 * nbar + 1.0))


def diffusive_time(Gamma: float, p: float) -> float:
    """Inverse of diffusive_probability"""
    _check_non_negative('Gamma', Gamma)
    p = check_probability(p)
    if p == 0.0:
        return 0.0
    if Gamma == 0.0:
        raise DomainError("p > 0 is never reached with Gamma = 0")
    if p == 1.0:
        return math.inf
    return -math.log1p(-p) / Gamma


def gad_coefficients(nbar: float, p: float) -> GADCoefficients:
    """
    Population transfer coefficients of the GAD channel.

    nbar = math.inf returns the exact diffusive limit (1-p/2, p/2, p/2, 1-p/2).
    """
    _check_non_negative('nbar', nbar)
    p = check_probability(p)
    if math.isinf(nbar):
        half = 0.5 * p
        return GADCoefficients(x=1.0 - half, y=half, w=half, z=1.0 - half)
    denom = 2.0 * nbar + 1.0
    y = p * nbar / denom
    w = p * (nbar + 1.0) / denom
    return GADCoefficients(x=1.0 - y, y=y, w=w, z=1.0 - w)


def population_coefficients(spec: ChannelSpec, p: float) -> GADCoefficients:
    """Population transfer (x, y, w, z) for any family"""
    p = check_probability(p)
    family = spec.family
    if family in (ChannelFamily.AD, ChannelFamily.GAD):
        return gad_coefficients(spec.effective_nbar, p)
    if family in (ChannelFamily.DIFFUSIVE, ChannelFamily.DEPOLARIZING):
        return gad_coefficients(math.inf, p)
    return GADCoefficients(x=1.0, y=0.0, w=0.0, z=1.0)


def coherence_exponent(spec: ChannelSpec) -> float:
    """Per-qubit power of (1-p) multiplying the off-diagonal corner"""
    return 0.5 if spec.family.is_gad_family else 1.0


def _gad_weights(spec: ChannelSpec) -> Tuple[float, float]:
    # (n+1)/(2n+1) and n/(2n+1); exactly (1, 0) at n=0, (1/2, 1/2) for Diffusive
    if spec.family is ChannelFamily.DIFFUSIVE:
        return 0.5, 0.5
    nbar = spec.effective_nbar
    denom = 2.0 * nbar + 1.0
    return (nbar + 1.0) / denom, nbar / denom


def kraus_operators(spec: ChannelSpec, p: float) -> KrausSet:
    """
    Kraus operators of the channel at exchange probability p.

    GAD-family channels return E_0..E_3 (E_2 and E_3 vanish for AD),
    depolarization the four Pauli operators, dephasing the identity plus
    the two computational-basis projectors.
    """
    p = check_probability(p)
    family = spec.family
    if family.is_gad_family:
        a, b = _gad_weights(spec)
        s = math.sqrt(1.0 - p)
        ops = [
            math.sqrt(a) * np.array([[1.0, 0.0], [0.0, s]], dtype=np.complex128),
            math.sqrt(a * p) * _LOWER,
            math.sqrt(b) * np.array([[s, 0.0], [0.0, 1.0]], dtype=np.complex128),
            math.sqrt(b * p) * _RAISE,
        ]
    elif family is ChannelFamily.DEPOLARIZING:
        ops = [
            math.sqrt(1.0 - 0.75 * p) * _IDENTITY,
            math.sqrt(0.25 * p) * _PAULI_X,
            math.sqrt(0.25 * p) * _PAULI_Y,
            math.sqrt(0.25 * p) * _PAULI_Z,
        ]
    else:
        ops = [
            math.sqrt(1.0 - p) * _IDENTITY,
            math.sqrt(p) * _PROJ_0,
            math.sqrt(p) * _PROJ_1,
        ]
    logger.debug(f"Built {len(ops)} Kraus operators for {spec.label} at p={p}")
    return KrausSet(tuple(ops))


def apply_single_qubit(kraus: KrausSet, rho: np.ndarray) -> np.ndarray:
    """Apply a Kraus set to a 2x2 density matrix"""
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (2, 2):
        raise DomainError(f"expected a 2x2 matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > Config.HERMITIAN_TOL:
        raise DomainError("input matrix is not Hermitian")
    out = kraus.apply(rho)
    return 0.5 * (out + out.conj().T)
