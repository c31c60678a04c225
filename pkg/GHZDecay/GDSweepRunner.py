# GDSweepRunner.py

import concurrent.futures
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Sequence, TypeVar

import numpy as np

from .GDConfig import Config
from .GDNegativity import min_pt_eigenvalue, min_pt_eigenvalue_at
from .GDOracle import QubitSubset, build_initial, check_capacity, evolve_dense, negativity_dense
from .GDSettings import SweepConfig
from .GDState import evolve

logger = logging.getLogger("GHZDecay.SweepRunner")

T = TypeVar("T")
R = TypeVar("R")


class SweepRunner:
    """
    Evaluates independent grid points on a bounded thread pool.

    Results always come back in input order, whatever order the workers
    finish in.
    """

    def __init__(self, jobs: int = 1):
        self.jobs = max(1, int(jobs))

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
        items = list(items)
        if self.jobs == 1 or len(items) < 2:
            return [fn(item) for item in items]
        workers = min(self.jobs, len(items))
        logger.debug(f"Evaluating {len(items)} points on {workers} threads")
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(fn, items))

    def sweep(self, config: SweepConfig) -> List[Dict[str, Any]]:
        """
        Rows {n, p, [t], k, lambda_min, negativity}, p-major and k-minor per N.
        """
        channel = config.channel()
        grid = config.grid()
        times = config.times() if config.time_axis else None
        rows: List[Dict[str, Any]] = []
        for n in config.n:
            params = config.params(n)
            ks = config.k_values(n)

            def point(index: int) -> List[Dict[str, Any]]:
                p = float(grid[index])
                state = evolve(params, channel, p)
                out = []
                for k in ks:
                    result = min_pt_eigenvalue(state, k)
                    row = {'n': n, 'p': p, 'k': k,
                           'lambda_min': result.Lambda_k, 'negativity': result.negativity}
                    if times is not None:
                        row['t'] = float(times[index])
                    out.append(row)
                return out

            for chunk in self.map(point, range(len(grid))):
                rows.extend(chunk)
        return rows


@dataclass(frozen=True)
class OracleDiff:
    """Worst disagreement between the closed form and the dense oracle for one N"""
    n: int
    max_lambda_diff: float
    max_negativity_diff: float
    max_negative_count: int
    points: int

    @property
    def ok(self) -> bool:
        return (self.max_lambda_diff <= Config.ORACLE_DIFF_TOL
                and self.max_negativity_diff <= Config.ORACLE_DIFF_TOL
                and self.max_negative_count <= 1)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n': self.n, 'max_lambda_diff': self.max_lambda_diff,
            'max_negativity_diff': self.max_negativity_diff,
            'max_negative_count': self.max_negative_count,
            'points': self.points, 'ok': self.ok,
        }


def oracle_diff(config: SweepConfig, n: int, runner: SweepRunner) -> OracleDiff:
    """Compare min_pt_eigenvalue_at with dense PT spectra over the grid and cuts"""
    check_capacity(n)
    channel = config.channel()
    params = config.params(n)
    ks = config.k_values(n)
    initial = build_initial(params)
    grid: Sequence[float] = [float(p) for p in config.grid()]

    def point(p: float) -> np.ndarray:
        rho = evolve_dense(initial.copy(), channel, p)
        worst = np.zeros(3)
        for k in ks:
            closed = min_pt_eigenvalue_at(channel, params, p, k)
            dense = negativity_dense(rho, QubitSubset.first(k, n))
            worst[0] = max(worst[0], abs(closed.min_eigenvalue - dense.min_eigenvalue))
            worst[1] = max(worst[1], abs(closed.negativity - dense.negativity))
            worst[2] = max(worst[2], dense.negative_count)
        return worst

    results = np.array(runner.map(point, grid))
    return OracleDiff(
        n=n,
        max_lambda_diff=float(results[:, 0].max()),
        max_negativity_diff=float(results[:, 1].max()),
        max_negative_count=int(results[:, 2].max()),
        points=len(grid) * len(ks),
    )
