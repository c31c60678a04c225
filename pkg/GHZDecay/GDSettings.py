# GDSettings.py

from dataclasses import asdict, dataclass, field, replace
import cmath
import json
import logging
import math
import os
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from .GDChannels import ChannelSpec
from .GDConfig import Config
from .GDErrors import DomainError
from .GDState import GHZParams, balanced_k

logger = logging.getLogger("GHZDecay.Settings")

PRESETS_CONFIG_FILE = os.path.join(os.path.dirname(__file__), "presets.json")

OUTPUT_FORMATS = ("csv", "json")
K_KEYWORDS = ("all", "balanced")


def get_labels() -> Dict[str, str]:
    return {
        # Channel
        "nbar": "Mean bath excitation",
        "gamma": "Dissipation rate (1/time)",
        "Gamma": "Diffusion constant (1/time)",
        "rate": "Depolarizing / dephasing rate (1/time)",

        # State
        "alpha_sq": "|alpha|^2",
        "n": "Number of qubits",

        # Grid
        "p_start": "First exchange probability",
        "p_stop": "Last exchange probability",
        "p_count": "Number of grid points",

        # Thresholds
        "epsilon": "Relative decay threshold",

        # Execution
        "jobs": "Worker threads",
    }


def get_defaults() -> Dict[str, Tuple[float, float, float, float]]:
    """(default, min, max, step) for every numeric sweep setting"""
    return {
        "nbar": (0.0, 0.0, 1e6, 0.1),
        "gamma": (1.0, 0.0, 1e12, 0.1),
        "Gamma": (1.0, 0.0, 1e12, 0.1),
        "rate": (1.0, 0.0, 1e12, 0.1),

        "alpha_sq": (0.5, 0.0, 1.0, 0.01),
        "n": (4, Config.MIN_QUBITS, 100000, 1),

        "p_start": (0.0, 0.0, 1.0, 0.01),
        "p_stop": (1.0, 0.0, 1.0, 0.01),
        "p_count": (101, 2, 1000001, 1),

        # epsilon is an open interval, checked separately
        "epsilon": (Config.DEFAULT_EPSILON, 0.0, 1.0, 0.001),

        "jobs": (1, 1, 64, 1),
    }


DEFAULTS = get_defaults()
LABELS = get_labels()


def get_default_value(setting: str) -> float:
    return DEFAULTS[setting][0]


def get_setting_range(setting: str) -> Tuple[float, float]:
    _, min_val, max_val, _ = DEFAULTS[setting]
    return min_val, max_val


def validate_setting_value(setting: str, value: float) -> bool:
    """Whether value is finite and inside the setting's range"""
    if setting not in DEFAULTS:
        return False
    try:
        value = float(value)
    except (TypeError, ValueError):
        return False
    if math.isnan(value):
        return False
    min_val, max_val = get_setting_range(setting)
    return min_val <= value <= max_val


def _require(setting: str, value: float) -> None:
    if not validate_setting_value(setting, value):
        min_val, max_val = get_setting_range(setting)
        raise DomainError(f"{LABELS[setting]} ({setting}) must lie in [{min_val}, {max_val}], got {value!r}")


def parse_complex(text: Union[str, List[float], Tuple[float, float], complex, float]) -> complex:
    """Accept "re,im", "re", [re, im] or a number"""
    if isinstance(text, (list, tuple)):
        if len(text) != 2:
            raise DomainError(f"complex amplitude needs [re, im], got {text!r}")
        return complex(float(text[0]), float(text[1]))
    if isinstance(text, (int, float, complex)):
        return complex(text)
    parts = [part.strip() for part in str(text).split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise DomainError(f"cannot read complex amplitude {text!r}, expected 're,im'")


def parse_k(text: Union[str, int, List[int]]) -> Union[str, Tuple[int, ...]]:
    """'all', 'balanced', a comma list or a list of ints"""
    if isinstance(text, str):
        lowered = text.strip().lower()
        if lowered in K_KEYWORDS:
            return lowered
        try:
            values = tuple(int(part) for part in lowered.split(","))
        except ValueError:
            raise DomainError(f"k must be 'all', 'balanced' or integers like '1,2', got {text!r}")
    elif isinstance(text, int):
        values = (text,)
    else:
        values = tuple(int(value) for value in text)
    if not values:
        raise DomainError("empty k list")
    return values


_SQRT_HALF = complex(math.sqrt(0.5), 0.0)


@dataclass(frozen=True)
class SweepConfig:
    """Everything a CLI command needs: channel, state, cuts and p grid"""
    family: str = "ad"
    nbar: float = 0.0
    gamma: float = 1.0
    Gamma: float = 1.0
    rate: float = 1.0
    alpha: complex = _SQRT_HALF
    beta: complex = _SQRT_HALF
    renormalize: bool = False
    n: Tuple[int, ...] = (4,)
    k: Union[str, Tuple[int, ...]] = "all"
    p_start: float = 0.0
    p_stop: float = 1.0
    p_count: int = 101
    time_axis: bool = False
    epsilon: float = Config.DEFAULT_EPSILON
    output_format: str = "csv"
    out: Optional[str] = None
    jobs: int = 1
    label: str = field(default="", compare=False)

    def validate(self) -> 'SweepConfig':
        """Raise DomainError on the first invalid field; returns self"""
        self.channel()
        if not self.n:
            raise DomainError("at least one N is required")
        for n in self.n:
            _require("n", n)
        for key in ("p_count", "jobs"):
            _require(key, getattr(self, key))
        if int(self.p_count) != self.p_count:
            raise DomainError(f"p_count must be an integer, got {self.p_count!r}")
        if self.time_axis:
            if self.p_start < 0.0 or self.p_stop < self.p_start or math.isinf(self.p_stop):
                raise DomainError(f"time range [{self.p_start}, {self.p_stop}] must be finite and ordered")
        else:
            _require("p_start", self.p_start)
            _require("p_stop", self.p_stop)
            if self.p_stop < self.p_start:
                raise DomainError(f"p_stop={self.p_stop} is below p_start={self.p_start}")
        if not 0.0 < self.epsilon < 1.0:
            raise DomainError(f"epsilon must lie in (0, 1), got {self.epsilon!r}")
        if self.output_format not in OUTPUT_FORMATS:
            raise DomainError(f"format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}")
        if isinstance(self.k, tuple):
            for n in self.n:
                bad = [k for k in self.k if not 1 <= k <= n // 2]
                if bad:
                    raise DomainError(f"k={bad} outside 1..{n // 2} for N={n}")
        elif self.k not in K_KEYWORDS:
            raise DomainError(f"k must be 'all', 'balanced' or a list, got {self.k!r}")
        for n in self.n:
            self.params(n)
        return self

    def channel(self) -> ChannelSpec:
        return ChannelSpec.parse(self.family, nbar=self.nbar, gamma=self.gamma,
                                 Gamma=self.Gamma, rate=self.rate)

    def params(self, n: int) -> GHZParams:
        """GHZParams for this N, renormalizing within the CLI tolerance"""
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > Config.CLI_NORMALIZATION_TOL and not self.renormalize:
            raise DomainError(
                f"|alpha|^2 + |beta|^2 = {norm!r} is not 1 (use --renormalize to rescale)")
        if abs(norm - 1.0) > Config.NORMALIZATION_TOL:
            logger.debug(f"renormalizing amplitudes (norm {norm!r})")
            return GHZParams.normalized(self.alpha, self.beta, n)
        return GHZParams(self.alpha, self.beta, n)

    def k_values(self, n: int) -> List[int]:
        if self.k == "all":
            return list(range(1, n // 2 + 1))
        if self.k == "balanced":
            return [balanced_k(n)]
        return list(self.k)

    def times(self) -> np.ndarray:
        return np.linspace(self.p_start, self.p_stop, int(self.p_count))

    def grid(self) -> np.ndarray:
        """Exchange probabilities of the sweep, converted from times when time_axis is set"""
        if not self.time_axis:
            return np.linspace(self.p_start, self.p_stop, int(self.p_count))
        channel = self.channel()
        return np.array([channel.probability_at(float(t)) for t in self.times()])

    def with_overrides(self, **overrides: Any) -> 'SweepConfig':
        """Copy with every non-None override applied"""
        return replace(self, **{key: value for key, value in overrides.items() if value is not None})

    @classmethod
    def from_dict(cls, data: Dict[str, Any], base: Optional['SweepConfig'] = None) -> 'SweepConfig':
        """
        Build from a JSON mapping.

        Args:
            data: keys named like the dataclass fields; amplitudes as
                "alpha_sq" (+ "alpha_phase", "beta_phase") or "alpha"/"beta"
                given as [re, im]
            base: values used for keys absent from data
        Returns:
            SweepConfig (not yet validated)
        """
        base = base or cls()
        data = dict(data)
        updates: Dict[str, Any] = {}
        if "alpha_sq" in data:
            alpha_sq = float(data.pop("alpha_sq"))
            _require("alpha_sq", alpha_sq)
            updates["alpha"] = cmath.rect(math.sqrt(alpha_sq), float(data.pop("alpha_phase", 0.0)))
            updates["beta"] = cmath.rect(math.sqrt(1.0 - alpha_sq), float(data.pop("beta_phase", 0.0)))
        for key in ("alpha", "beta"):
            if key in data:
                updates[key] = parse_complex(data.pop(key))
        if "n" in data:
            value = data.pop("n")
            updates["n"] = tuple(int(v) for v in (value if isinstance(value, list) else [value]))
        if "k" in data:
            updates["k"] = parse_k(data.pop("k"))
        if "format" in data:
            updates["output_format"] = data.pop("format")
        known = {f for f in cls.__dataclass_fields__}
        unknown = sorted(set(data) - known)
        if unknown:
            raise DomainError(f"unknown configuration keys: {unknown}")
        updates.update(data)
        return replace(base, **updates)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["alpha"] = [self.alpha.real, self.alpha.imag]
        data["beta"] = [self.beta.real, self.beta.imag]
        data["n"] = list(self.n)
        data["k"] = self.k if isinstance(self.k, str) else list(self.k)
        return data


def _default_presets() -> Dict[str, Dict[str, Any]]:
    return {
        "1": {
            "label": "four-qubit balanced GHZ under depolarization",
            "family": "depolarizing",
            "alpha_sq": 0.5,
            "n": [4],
            "k": [1, 2],
            "p_start": 0.0,
            "p_stop": 1.0,
            "p_count": 201,
        },
        "2": {
            "label": "balanced-cut decay for N = 4, 40 and 400",
            "family": "depolarizing",
            "alpha": [1.0 / 3.0, 0.0],
            "beta": [math.sqrt(8.0) / 3.0, 0.0],
            "n": [4, 40, 400],
            "k": "balanced",
            "p_start": 0.0,
            "p_stop": 1.0,
            "p_count": 201,
        },
    }


def load_presets_from_config() -> Dict[str, Dict[str, Any]]:
    """Figure presets from presets.json, falling back to the built-in ones"""
    defaults = _default_presets()
    try:
        if os.path.exists(PRESETS_CONFIG_FILE):
            with open(PRESETS_CONFIG_FILE, 'r') as f:
                presets = json.load(f)
            logger.debug(f"Loaded {len(presets)} presets from {PRESETS_CONFIG_FILE}")
            return presets
        logger.info("Presets file not found, using built-in presets")
        return defaults
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"Error loading presets file: {e}")
        return defaults


def get_preset(name: Union[str, int]) -> SweepConfig:
    presets = load_presets_from_config()
    key = str(name)
    if key not in presets:
        raise DomainError(f"unknown figure preset {name!r}, available: {sorted(presets)}")
    return SweepConfig.from_dict(presets[key])
