import numpy as np
import pytest

from GHZDecay.GDConfig import Config
from GHZDecay.GDErrors import CapacityError
from GHZDecay.GDNegativity import min_pt_eigenvalue
from GHZDecay.GDSettings import SweepConfig
from GHZDecay.GDState import evolve
from GHZDecay.GDSweepRunner import OracleDiff, SweepRunner, oracle_diff


@pytest.fixture(autouse=True)
def default_dense_limit(monkeypatch):
    monkeypatch.delenv(Config.DENSE_LIMIT_ENV, raising=False)


def test_map_keeps_input_order():
    assert SweepRunner(4).map(lambda x: x * x, range(20)) == [x * x for x in range(20)]
    assert SweepRunner(0).jobs == 1
    assert SweepRunner(3).map(str, []) == []


def test_sweep_rows_are_p_major():
    config = SweepConfig(family="gad", nbar=0.5, n=(4, 6), p_count=3).validate()
    rows = SweepRunner(1).sweep(config)
    assert len(rows) == 3 * 2 + 3 * 3
    assert [(r['n'], r['p'], r['k']) for r in rows[:4]] == [(4, 0.0, 1), (4, 0.0, 2), (4, 0.5, 1), (4, 0.5, 2)]
    assert [r['k'] for r in rows[6:9]] == [1, 2, 3]
    state = evolve(config.params(6), config.channel(), 1.0)
    last = min_pt_eigenvalue(state, 3)
    assert rows[-1]['lambda_min'] == last.Lambda_k
    assert rows[-1]['negativity'] == last.negativity


def test_sweep_is_independent_of_thread_count():
    config = SweepConfig(family="depolarizing", n=(8,), p_count=41).validate()
    assert SweepRunner(1).sweep(config) == SweepRunner(6).sweep(config)


def test_time_axis_rows_carry_time():
    config = SweepConfig(family="dephasing", rate=2.0, time_axis=True, p_stop=3.0, p_count=4).validate()
    rows = SweepRunner(1).sweep(config)
    np.testing.assert_allclose(sorted({r['t'] for r in rows}), [0.0, 1.0, 2.0, 3.0])


def test_oracle_agrees_at_small_n():
    config = SweepConfig(family="gad", nbar=1.0, alpha=0.6, beta=0.8j, p_count=11).validate()
    diff = oracle_diff(config, 5, SweepRunner(2))
    assert diff.ok
    assert diff.points == 11 * 2
    assert diff.max_negative_count <= 1


def test_oracle_refuses_large_n():
    config = SweepConfig(n=(13,), p_count=3).validate()
    with pytest.raises(CapacityError):
        oracle_diff(config, 13, SweepRunner(1))


def test_oracle_diff_flags_disagreement():
    diff = OracleDiff(n=4, max_lambda_diff=1e-6, max_negativity_diff=0.0, max_negative_count=1, points=10)
    assert not diff.ok
    assert diff.to_dict()['ok'] is False
