# GDConfig.py

from dataclasses import dataclass
import logging
import os


logger = logging.getLogger("GHZDecay.Config")


@dataclass(frozen=True)
class Config:
    """Unified configuration settings for GHZDecay"""
    # Project identification
    PROJECT_NAME: str = "GHZDecay"
    DENSE_LIMIT_ENV: str = "GHZ_DECAY_DENSE_LIMIT"

    # Dense oracle limits
    DENSE_LIMIT: int = 10  # Default qubit ceiling for 2^N x 2^N matrices
    HARD_DENSE_LIMIT: int = 12  # Opt-in ceiling, never exceeded
    MIN_QUBITS: int = 2

    # Large-N policy
    LOG_DOMAIN_THRESHOLD: int = 64  # Signed-log evaluation above this N

    # Root finding
    SCAN_POINTS: int = 1000
    BISECTION_XTOL: float = 1e-15
    BISECTION_MAXITER: int = 200
    ROOT_RESIDUAL_TOL: float = 1e-12
    WINDOW_SEPARATION: float = 1e-12

    # Tolerances
    NORMALIZATION_TOL: float = 1e-12
    CLI_NORMALIZATION_TOL: float = 1e-9
    KRAUS_TOL: float = 1e-14
    TRACE_TOL: float = 1e-12
    HERMITIAN_TOL: float = 1e-12
    NEGATIVITY_TOL: float = 1e-12
    CERTIFICATE_TOL: float = 1e-10
    ORACLE_DIFF_TOL: float = 1e-10

    # Separability certificate
    SIGMA_FULL_PPT_MAX_N: int = 6

    # Epsilon thresholds
    DEFAULT_EPSILON: float = 1e-2

    # Output
    CSV_SIGNIFICANT_DIGITS: int = 17

    # Logging
    LOG_LEVEL: int = logging.WARNING

    @classmethod
    def get_dense_limit(cls) -> int:
        """Get the oracle qubit ceiling, honouring the environment override"""
        raw = os.environ.get(cls.DENSE_LIMIT_ENV)
        if raw is None or raw.strip() == "":
            return cls.DENSE_LIMIT
        try:
            value = int(raw)
        except ValueError:
            logger.warning(f"Ignoring non-integer {cls.DENSE_LIMIT_ENV}={raw!r}")
            return cls.DENSE_LIMIT
        clamped = max(cls.MIN_QUBITS, min(cls.HARD_DENSE_LIMIT, value))
        if clamped != value:
            logger.warning(
                f"{cls.DENSE_LIMIT_ENV}={value} clamped to {clamped} "
                f"(allowed range {cls.MIN_QUBITS}..{cls.HARD_DENSE_LIMIT})"
            )
        return clamped

    @classmethod
    def use_log_domain(cls, n_qubits: int) -> bool:
        """Whether quantities for this N are evaluated in signed-log form"""
        return n_qubits > cls.LOG_DOMAIN_THRESHOLD

    @classmethod
    def set_log_level(cls, level: int) -> None:
        """Set the logging level."""
        setattr(cls, 'LOG_LEVEL', level)
