# GDErrors.py

from typing import Optional


class GHZDecayError(Exception):
    """Base exception for all GHZDecay failures"""
    exit_code: int = 1


class DomainError(GHZDecayError, ValueError):
    """Input outside the mathematical domain of an operation"""
    exit_code = 2


class UndefinedCriticalPointError(GHZDecayError):
    """Critical point requested for a state with no entanglement to lose"""
    exit_code = 2


class NoESDError(GHZDecayError):
    """The channel never produces entanglement sudden death"""
    exit_code = 0


class CapacityError(GHZDecayError):
    """Dense representation requested above the configured qubit limit"""
    exit_code = 3

    def __init__(self, n_qubits: int, limit: int):
        super().__init__(
            f"N={n_qubits} exceeds the dense limit of {limit} qubits "
            f"(set GHZ_DECAY_DENSE_LIMIT up to 12 to raise it)"
        )
        self.n_qubits = n_qubits
        self.limit = limit


class StructuralError(GHZDecayError):
    """An identity that must hold by construction was violated"""
    exit_code = 4


class NumericalError(GHZDecayError):
    """Numerical routine failed; carries a short report on the input matrix"""
    exit_code = 4

    def __init__(self, message: str, report: Optional[str] = None):
        super().__init__(f"{message} [{report}]" if report else message)
        self.report = report


class VerificationError(GHZDecayError):
    """A cross-check exceeded its tolerance"""
    exit_code = 4


class SettingsFileError(GHZDecayError):
    """Custom exception for settings file operations"""
    exit_code = 2
