# GDCriticality.py
"""
Sudden-death and epsilon-decay thresholds.

Closed forms exist for amplitude damping, the purely diffusive limit and
depolarization; every other case goes through a sign scan of Lambda_k(p)
on a uniform grid followed by bisection on the first bracketing interval.
Only signs are used, so the search works unchanged in the signed-log
domain needed at large N.
"""

from dataclasses import dataclass, field
from enum import Enum
import logging
import math
import numbers
from typing import Callable, List, Optional, Tuple, Union

import numpy as np
from scipy.optimize import bisect

from .GDChannels import ChannelFamily, ChannelSpec
from .GDConfig import Config
from .GDErrors import DomainError, NoESDError, UndefinedCriticalPointError
from .GDNegativity import _check_cut, pt_block_eigenvalue
from .GDState import GHZParams, balanced_k

logger = logging.getLogger("GHZDecay.Criticality")

ASYMPTOTIC_DIFFUSIVE = 3.0 - math.sqrt(5.0)
ASYMPTOTIC_DEPOLARIZING = 1.0 - 1.0 / math.sqrt(5.0)


class CriticalMethod(str, Enum):
    CLOSED_FORM = "closed-form"
    BISECTION = "bisection"
    NO_ESD = "no-esd"


@dataclass(frozen=True)
class CriticalResult:
    """Critical probability of one cut; p_c is None when there is no ESD"""
    p_c: Optional[float]
    k: int
    method: CriticalMethod
    residual: float = 0.0

    @property
    def has_esd(self) -> bool:
        return self.p_c is not None

    def to_dict(self) -> dict:
        return {'k': self.k, 'p_c': self.p_c, 'method': self.method.value, 'residual': self.residual}


@dataclass(frozen=True)
class EpsilonResult:
    """
    Probability where the balanced-cut eigenvalue has shrunk to epsilon times its start.

    p_eps is the exact root, p_eps_leading inverts the leading-order term
    and p_eps_approx is the first-order large-N formula.
    """
    epsilon: float
    p_eps: float
    p_eps_approx: float
    p_eps_leading: float
    N: int
    k: int

    @property
    def scaled(self) -> float:
        """N p_eps, which tends to -c log(epsilon)"""
        return self.N * self.p_eps

    @property
    def scaled_approx(self) -> float:
        return self.N * self.p_eps_approx

    def to_dict(self) -> dict:
        return {
            'N': self.N, 'k': self.k, 'epsilon': self.epsilon, 'p_eps': self.p_eps,
            'p_eps_leading': self.p_eps_leading, 'p_eps_approx': self.p_eps_approx,
            'N_p_eps': self.scaled, 'N_p_eps_approx': self.scaled_approx,
        }


@dataclass(frozen=True)
class BoundWindow:
    """Interval where every 1:N-1 cut is PPT while the balanced cut is still NPT"""
    p_start: Optional[float]
    p_end: Optional[float]
    nonempty: bool
    reason: str = ""
    warnings: Tuple[str, ...] = field(default_factory=tuple)

    def interior_points(self, count: int = 11) -> np.ndarray:
        """count equally spaced points strictly inside the window"""
        if not self.nonempty:
            return np.empty(0)
        fractions = np.arange(1, count + 1) / (count + 1)
        return self.p_start + (self.p_end - self.p_start) * fractions

    def to_dict(self) -> dict:
        return {
            'p_start': self.p_start, 'p_end': self.p_end, 'nonempty': self.nonempty,
            'reason': self.reason, 'warnings': list(self.warnings),
        }


def _require_entangled(params: GHZParams) -> None:
    if params.is_product:
        raise UndefinedCriticalPointError(
            "alpha*beta = 0: the state is a product state and every negativity is identically zero")


def _gad_family_factor(channel: ChannelSpec) -> float:
    return 2.0 if channel.family.is_gad_family else 1.0


def _scan_grid() -> np.ndarray:
    return np.linspace(0.0, 1.0, Config.SCAN_POINTS + 1)


def _first_crossing(sign_of: Callable[[float], int],
                    lo: float = 0.0, hi: float = 1.0) -> Optional[Tuple[float, float]]:
    """First grid interval where the sign goes from negative to nonnegative"""
    grid = lo + (hi - lo) * _scan_grid()
    previous = grid[0]
    if sign_of(previous) >= 0:
        return (previous, previous)
    for point in grid[1:]:
        if sign_of(point) >= 0:
            return (previous, point)
        previous = point
    return None


def _bisect_sign(sign_of: Callable[[float], int], bracket: Tuple[float, float]) -> float:
    lo, hi = bracket
    if lo == hi:
        return hi
    return bisect(lambda p: float(sign_of(p)), lo, hi,
                  xtol=Config.BISECTION_XTOL, maxiter=Config.BISECTION_MAXITER)


def esd_probability_ad(params: GHZParams) -> CriticalResult:
    """
    Amplitude-damping critical probability min{1, |alpha/beta|^(2/N)}.

    The value is the same for every cut k.
    """
    _require_entangled(params)
    ratio = abs(params.alpha) / abs(params.beta)
    p_c = min(1.0, ratio ** (2.0 / params.N))
    return CriticalResult(p_c=p_c, k=balanced_k(params.N), method=CriticalMethod.CLOSED_FORM)


def esd_probability_diffusive(params: GHZParams) -> CriticalResult:
    """Purely diffusive balanced-cut critical probability (closed form for even N)"""
    _require_entangled(params)
    if params.N % 2:
        logger.info(f"N={params.N} is odd: solving the k={balanced_k(params.N)} cut numerically")
        return esd_probability_numeric(ChannelSpec(ChannelFamily.DIFFUSIVE), params, balanced_k(params.N))
    q = params.abs_ab ** (2.0 / params.N)
    p_c = 1.0 + 2.0 * q - math.sqrt(1.0 + 4.0 * q * q)
    return CriticalResult(p_c=p_c, k=params.N // 2, method=CriticalMethod.CLOSED_FORM)


def esd_probability_depolarizing(params: GHZParams) -> CriticalResult:
    """Depolarizing balanced-cut critical probability 1 - (1 + 4|alpha beta|^(2/N))^(-1/2)"""
    _require_entangled(params)
    if params.N % 2:
        logger.info(f"N={params.N} is odd: solving the k={balanced_k(params.N)} cut numerically")
        return esd_probability_numeric(ChannelSpec(ChannelFamily.DEPOLARIZING), params, balanced_k(params.N))
    q = params.abs_ab ** (2.0 / params.N)
    p_c = 1.0 - 1.0 / math.sqrt(1.0 + 4.0 * q)
    return CriticalResult(p_c=p_c, k=params.N // 2, method=CriticalMethod.CLOSED_FORM)


def esd_probability_numeric(channel: ChannelSpec, params: GHZParams, k: int) -> CriticalResult:
    """
    Smallest p in (0, 1] with Lambda_k(p) = 0.

    Args:
        channel: any channel
        params: entangled initial state
        k: cut size, 1..floor(N/2)
    Returns:
        CriticalResult found by sign scan plus bisection, or a NO_ESD result
        for dephasing, whose only zero is the asymptotic point p = 1
    """
    _require_entangled(params)
    k = _check_cut(params.N, k)

    def sign_of(p: float) -> int:
        return pt_block_eigenvalue(channel, params, p, k).sign

    bracket = _first_crossing(sign_of)
    if bracket is None:
        logger.warning(f"{channel.label}: Lambda_{k} never reaches zero on [0, 1]")
        return CriticalResult(p_c=None, k=k, method=CriticalMethod.NO_ESD)
    p_c = _bisect_sign(sign_of, bracket)
    if channel.family is ChannelFamily.PHASE_DAMPING and p_c >= 1.0 - 1e-12:
        logger.info(f"dephasing: Lambda_{k} vanishes only at p = 1, no sudden death")
        return CriticalResult(p_c=None, k=k, method=CriticalMethod.NO_ESD)
    residual = abs(pt_block_eigenvalue(channel, params, p_c, k).value)
    if residual > Config.ROOT_RESIDUAL_TOL:
        logger.warning(f"{channel.label}: residual {residual:.3e} at p_c={p_c} exceeds tolerance")
    return CriticalResult(p_c=p_c, k=k, method=CriticalMethod.BISECTION, residual=residual)


def closed_form_critical(channel: ChannelSpec, params: GHZParams) -> Optional[CriticalResult]:
    """Closed-form critical probability for the channel, None when there is none"""
    family = channel.family
    if family is ChannelFamily.AD or (family is ChannelFamily.GAD and channel.nbar == 0.0):
        return esd_probability_ad(params)
    if family is ChannelFamily.DIFFUSIVE and params.N % 2 == 0:
        return esd_probability_diffusive(params)
    if family is ChannelFamily.DEPOLARIZING and params.N % 2 == 0:
        return esd_probability_depolarizing(params)
    return None


def critical_profile(channel: ChannelSpec, params: GHZParams) -> List[CriticalResult]:
    """Numeric critical probability of every cut k = 1..floor(N/2)"""
    return [esd_probability_numeric(channel, params, k) for k in range(1, params.N // 2 + 1)]


def esd_time(channel: ChannelSpec, params: GHZParams, k: int) -> float:
    """Physical time of sudden death for cut k (math.inf without ESD)"""
    result = esd_probability_numeric(channel, params, k)
    if not result.has_esd:
        return math.inf
    return channel.time_at(result.p_c)


def epsilon_probability(channel: ChannelSpec, params: GHZParams,
                        epsilon: float = Config.DEFAULT_EPSILON) -> EpsilonResult:
    """
    Solve Lambda_{N/2}(p) = epsilon Lambda_{N/2}(0) on the balanced cut.

    Args:
        channel: any channel
        params: entangled initial state
        epsilon: fraction of the initial eigenvalue, 0 < epsilon < 1
    Returns:
        EpsilonResult with the exact root and the two large-N approximations
    """
    if not isinstance(epsilon, numbers.Real) or math.isnan(epsilon) or not 0.0 < epsilon < 1.0:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    _require_entangled(params)
    k = balanced_k(params.N)
    target = math.log(epsilon) + math.log(params.abs_ab)

    def sign_of(p: float) -> int:
        block = pt_block_eigenvalue(channel, params, p, k)
        if block.sign >= 0:
            return 1
        if block.log_abs > target:
            return -1
        return 0 if block.log_abs == target else 1

    bracket = _first_crossing(sign_of)
    p_eps = _bisect_sign(sign_of, bracket) if bracket is not None else 1.0
    factor = _gad_family_factor(channel)
    log_eps = math.log(epsilon)
    return EpsilonResult(
        epsilon=float(epsilon),
        p_eps=p_eps,
        p_eps_approx=-factor * log_eps / params.N,
        p_eps_leading=-math.expm1(factor * log_eps / params.N),
        N=params.N,
        k=k,
    )


def asymptotic_esd_limit(channel: Union[ChannelSpec, ChannelFamily]) -> float:
    """Large-N limit of the balanced-cut critical probability"""
    if isinstance(channel, ChannelSpec):
        family = channel.family
        if family is ChannelFamily.GAD and channel.nbar == 0.0:
            family = ChannelFamily.AD
    else:
        family = ChannelFamily(channel)
    if family is ChannelFamily.AD:
        return 1.0
    if family is ChannelFamily.DIFFUSIVE:
        return ASYMPTOTIC_DIFFUSIVE
    if family is ChannelFamily.DEPOLARIZING:
        return ASYMPTOTIC_DEPOLARIZING
    if family is ChannelFamily.PHASE_DAMPING:
        raise NoESDError("dephasing never produces entanglement sudden death")
    raise DomainError("no closed-form large-N limit for GAD at finite nbar > 0")


def bound_entanglement_window(channel: ChannelSpec, params: GHZParams) -> BoundWindow:
    """
    Interval between the death of the 1:N-1 cut and of the balanced cut.

    Args:
        channel: any channel
        params: entangled initial state with N >= 4
    Returns:
        BoundWindow; empty for amplitude damping (all cuts die together) and
        for dephasing (no cut ever dies)
    """
    if params.N < 4:
        raise DomainError(f"a window needs distinct cuts, N >= 4 (got N={params.N})")
    if params.is_product:
        raise DomainError("alpha*beta = 0: no entanglement, no window")
    first = esd_probability_numeric(channel, params, 1)
    last = esd_probability_numeric(channel, params, balanced_k(params.N))
    if not first.has_esd or not last.has_esd:
        return BoundWindow(
            p_start=first.p_c, p_end=last.p_c, nonempty=False,
            reason="no sudden death: every cut stays NPT until p = 1, no PPT region",
        )
    nonempty = first.p_c < last.p_c - Config.WINDOW_SEPARATION
    warnings = []
    if nonempty:
        reason = "every 1:N-1 cut is PPT while the balanced cut is still NPT"
        for p in np.linspace(first.p_c, last.p_c, 101)[1:-1]:
            if pt_block_eigenvalue(channel, params, float(p), 1).sign < 0:
                message = f"Lambda_1 becomes negative again at p={p:.6f} inside the window"
                logger.warning(message)
                warnings.append(message)
                break
    elif channel.family is ChannelFamily.AD or (channel.family is ChannelFamily.GAD and channel.nbar == 0.0):
        reason = "amplitude damping: all cuts lose entanglement at the same p (fully separable there)"
    else:
        reason = "the 1:N-1 and balanced cuts lose entanglement together"
    return BoundWindow(p_start=first.p_c, p_end=last.p_c, nonempty=nonempty,
                       reason=reason, warnings=tuple(warnings))
