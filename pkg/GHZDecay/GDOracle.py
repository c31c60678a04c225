# GDOracle.py
"""
Brute-force reference: explicit 2^N x 2^N density matrices.

Channels are applied qubit by qubit as a 4x4 transfer matrix acting on the
(row, column) tensor legs of that qubit, so no 2^N x 2^N Kraus operator is
ever built. Partial transposes swap tensor legs; negativities come from a
dense Hermitian eigensolver.
"""

from dataclasses import dataclass, field
from itertools import combinations
import logging
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from .GDChannels import ChannelSpec, check_probability, kraus_operators
from .GDConfig import Config
from .GDErrors import CapacityError, DomainError, NumericalError
from .GDState import GHZParams

logger = logging.getLogger("GHZDecay.Oracle")


def check_capacity(n_qubits: int) -> None:
    """Refuse dense work above the configured qubit ceiling"""
    limit = Config.get_dense_limit()
    if n_qubits > limit:
        raise CapacityError(n_qubits, limit)


@dataclass
class DenseState:
    """
    Explicit Hermitian matrix on N qubits, qubit 0 being the most significant bit.

    declared_trace is None for unnormalized operators whose trace is not
    fixed in advance.
    """
    matrix: np.ndarray
    n_qubits: int
    declared_trace: Optional[float] = field(default=1.0)

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.complex128)
        dim = 2 ** self.n_qubits
        if self.matrix.shape != (dim, dim):
            raise DomainError(f"expected a {dim}x{dim} matrix, got {self.matrix.shape}")
        deviation = self.hermiticity_error()
        if deviation > Config.HERMITIAN_TOL:
            raise DomainError(f"matrix is not Hermitian (max deviation {deviation:.3e})")
        if self.declared_trace is not None:
            trace = self.trace()
            if abs(trace - self.declared_trace) > Config.TRACE_TOL:
                raise DomainError(f"trace {trace!r} differs from declared {self.declared_trace!r}")

    @property
    def dim(self) -> int:
        return 2 ** self.n_qubits

    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))

    def purity(self) -> float:
        return float(np.real(np.vdot(self.matrix, self.matrix)))

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def copy(self) -> 'DenseState':
        return DenseState(self.matrix.copy(), self.n_qubits, self.declared_trace)


@dataclass(frozen=True)
class QubitSubset:
    """Nonempty proper subset of qubit indices defining one side of a cut"""
    indices: Tuple[int, ...]
    n_qubits: int

    def __post_init__(self):
        indices = tuple(sorted(set(int(i) for i in self.indices)))
        if len(indices) != len(self.indices):
            raise DomainError(f"duplicate qubit indices in {self.indices}")
        if not indices or len(indices) >= self.n_qubits:
            raise DomainError(f"subset {self.indices} must be nonempty and proper for N={self.n_qubits}")
        if indices[0] < 0 or indices[-1] >= self.n_qubits:
            raise DomainError(f"subset {self.indices} out of range for N={self.n_qubits}")
        object.__setattr__(self, 'indices', indices)

    @classmethod
    def first(cls, k: int, n_qubits: int) -> 'QubitSubset':
        """Representative subset {0, ..., k-1}"""
        return cls(tuple(range(k)), n_qubits)

    def __len__(self) -> int:
        return len(self.indices)

    def complement(self) -> 'QubitSubset':
        return QubitSubset(tuple(i for i in range(self.n_qubits) if i not in self.indices), self.n_qubits)


def subsets_of_size(n_qubits: int, k: int) -> Iterator[QubitSubset]:
    for indices in combinations(range(n_qubits), k):
        yield QubitSubset(indices, n_qubits)


def all_bipartitions(n_qubits: int) -> Iterator[QubitSubset]:
    """Every cut once: subsets of size 1..N-1 containing qubit 0"""
    for k in range(1, n_qubits):
        for indices in combinations(range(1, n_qubits), k - 1):
            yield QubitSubset((0,) + indices, n_qubits)


def build_initial(params: GHZParams) -> DenseState:
    """Dense projector onto alpha|0..0> + beta|1..1>"""
    check_capacity(params.N)
    psi = np.zeros(2 ** params.N, dtype=np.complex128)
    psi[0] = params.alpha
    psi[-1] = params.beta
    return DenseState(np.outer(psi, psi.conj()), params.N)


def apply_local_kraus(matrix: np.ndarray, n_qubits: int, ops: Sequence[np.ndarray],
                      qubit: int) -> np.ndarray:
    """
    Apply rho -> sum_m E_m rho E_m^dag on a single qubit.

    The operators need not be trace preserving (POVM branches are allowed).
    """
    if not 0 <= qubit < n_qubits:
        raise DomainError(f"qubit {qubit} out of range for N={n_qubits}")
    transfer = sum(np.kron(op, np.conj(op)) for op in ops)
    dim = 2 ** n_qubits
    tensor = np.asarray(matrix, dtype=np.complex128).reshape((2,) * (2 * n_qubits))
    legs = (qubit, n_qubits + qubit)
    tensor = np.moveaxis(tensor, legs, (0, 1))
    moved_shape = tensor.shape
    out = (transfer @ tensor.reshape(4, -1)).reshape(moved_shape)
    return np.moveaxis(out, (0, 1), legs).reshape(dim, dim)


def evolve_dense(rho: DenseState, channel: ChannelSpec, p: float,
                 order: Optional[Sequence[int]] = None) -> DenseState:
    """
    Apply the channel independently to every qubit.

    Args:
        rho: input state
        channel: channel acting on each qubit
        p: exchange probability
        order: qubit application order (any permutation gives the same result)
    Returns:
        New DenseState with the same declared trace
    """
    p = check_probability(p)
    check_capacity(rho.n_qubits)
    ops = kraus_operators(channel, p).ops
    qubits = list(range(rho.n_qubits)) if order is None else list(order)
    if sorted(qubits) != list(range(rho.n_qubits)):
        raise DomainError(f"order {order} is not a permutation of the qubits")
    matrix = rho.matrix
    for qubit in qubits:
        matrix = apply_local_kraus(matrix, rho.n_qubits, ops, qubit)
    return DenseState(matrix, rho.n_qubits, rho.declared_trace)


def partial_transpose(rho: DenseState, subset: QubitSubset) -> DenseState:
    """Transpose the tensor factors listed in subset"""
    if subset.n_qubits != rho.n_qubits:
        raise DomainError(f"subset is for N={subset.n_qubits}, state has N={rho.n_qubits}")
    n = rho.n_qubits
    perm = list(range(2 * n))
    for i in subset.indices:
        perm[i], perm[n + i] = n + i, i
    tensor = rho.matrix.reshape((2,) * (2 * n)).transpose(perm)
    return DenseState(tensor.reshape(rho.dim, rho.dim), n, rho.declared_trace)


def _matrix_report(matrix: np.ndarray) -> str:
    finite = bool(np.all(np.isfinite(matrix)))
    if not finite:
        return f"dim={matrix.shape[0]}, contains non-finite entries"
    herm = float(np.max(np.abs(matrix - matrix.conj().T)))
    return (f"dim={matrix.shape[0]}, frobenius={np.linalg.norm(matrix):.3e}, "
            f"hermiticity_error={herm:.3e}, cond={np.linalg.cond(matrix):.3e}")


def hermitian_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix"""
    try:
        return linalg.eigvalsh(matrix, check_finite=True)
    except (linalg.LinAlgError, ValueError) as e:
        raise NumericalError(f"Hermitian eigensolver failed: {e}", _matrix_report(matrix))


@dataclass(frozen=True)
class DenseNegativity:
    """Negativity of one cut together with the PT spectrum summary"""
    negativity: float
    min_eigenvalue: float
    negative_count: int


def negativity_dense(rho: DenseState, subset: QubitSubset) -> DenseNegativity:
    """
    Sum of |negative eigenvalues| of the partial transpose.

    Eigenvalues above -Config.NEGATIVITY_TOL are treated as zero, both in the
    negativity and in the negative-eigenvalue count.
    """
    eigenvalues = hermitian_eigenvalues(partial_transpose(rho, subset).matrix)
    negative = eigenvalues[eigenvalues < -Config.NEGATIVITY_TOL]
    return DenseNegativity(
        negativity=float(-np.sum(negative)),
        min_eigenvalue=float(eigenvalues[0]),
        negative_count=int(negative.size),
    )


def min_eigenvalue(rho: DenseState) -> float:
    return float(hermitian_eigenvalues(rho.matrix)[0])


def representative_subsets(n_qubits: int) -> List[QubitSubset]:
    """One subset {0..k-1} per cut size k = 1..floor(N/2)"""
    return [QubitSubset.first(k, n_qubits) for k in range(1, n_qubits // 2 + 1)]
