import math

import numpy as np
import pytest

from GHZDecay.GDChannels import ChannelFamily, ChannelSpec
from GHZDecay.GDErrors import CapacityError, DomainError
from GHZDecay.GDState import (
    GHZParams, SignedLog, balanced_k, dense_from_symmetric, evolve, hamming_weights,
    lambda_coefficient, log_abs_offdiag, log_lambda_coefficient
)

FAMILIES = [
    ChannelSpec(ChannelFamily.AD),
    ChannelSpec(ChannelFamily.GAD, nbar=1.0),
    ChannelSpec(ChannelFamily.DIFFUSIVE),
    ChannelSpec(ChannelFamily.DEPOLARIZING),
    ChannelSpec(ChannelFamily.PHASE_DAMPING),
]

ONE_THIRD = GHZParams(1.0 / 3.0, math.sqrt(8.0) / 3.0, 4)


def test_params_validation():
    with pytest.raises(DomainError):
        GHZParams(1.0, 1.0, 4)
    with pytest.raises(DomainError):
        GHZParams(1.0, 0.0, 1)
    with pytest.raises(DomainError):
        GHZParams(1.0, 0.0, 2.5)
    with pytest.raises(DomainError):
        GHZParams.from_alpha_sq(1.5, 3)
    with pytest.raises(DomainError):
        GHZParams.normalized(0.0, 0.0, 3)


def test_params_constructors():
    params = GHZParams.from_alpha_sq(0.25, 5, alpha_phase=0.3, beta_phase=-1.1)
    np.testing.assert_allclose(params.alpha_sq, 0.25, rtol=1e-14)
    np.testing.assert_allclose(params.abs_ab, math.sqrt(0.25 * 0.75), rtol=1e-14)
    np.testing.assert_allclose(np.angle(params.coherence), 1.4, rtol=1e-12)
    normalized = GHZParams.normalized(3.0, 4.0j, 2)
    np.testing.assert_allclose([normalized.alpha, normalized.beta], [0.6, 0.8j], rtol=1e-15)
    assert GHZParams(1.0, 0.0, 3).is_product
    assert not ONE_THIRD.is_product


def test_balanced_k():
    assert balanced_k(4) == 2
    assert balanced_k(7) == 3
    assert balanced_k(2) == 1


@pytest.mark.parametrize("spec", FAMILIES, ids=lambda s: s.label)
def test_initial_state_has_two_populated_patterns(spec):
    state = evolve(ONE_THIRD, spec, 0.0)
    np.testing.assert_allclose(state.lambdas, [1 / 9, 0, 0, 0, 8 / 9], atol=1e-15)
    np.testing.assert_allclose(state.offdiag, ONE_THIRD.coherence, rtol=1e-15)


@pytest.mark.parametrize("spec", FAMILIES, ids=lambda s: s.label)
@pytest.mark.parametrize("n", [2, 3, 7, 30])
def test_trace_and_positivity_preserved(spec, n):
    params = GHZParams.from_alpha_sq(0.3, n, beta_phase=0.7)
    for p in np.linspace(0.0, 1.0, 13):
        state = evolve(params, spec, p)
        np.testing.assert_allclose(state.trace(), 1.0, atol=1e-12)
        assert np.all(state.lambdas >= 0.0)
        assert abs(state.offdiag) ** 2 <= state.lambdas[0] * state.lambdas[n] + 1e-15


def test_amplitude_damping_at_one_is_ground_state():
    state = evolve(ONE_THIRD, ChannelSpec(ChannelFamily.AD), 1.0)
    np.testing.assert_allclose(state.lambdas, [1, 0, 0, 0, 0], atol=1e-15)
    assert state.offdiag == 0


def test_depolarizing_at_one_is_maximally_mixed():
    state = evolve(ONE_THIRD, ChannelSpec(ChannelFamily.DEPOLARIZING), 1.0)
    np.testing.assert_allclose(state.lambdas, np.full(5, 1 / 16), rtol=1e-14)


def test_lambda_coefficient_closed_form():
    # AD: weight-k pattern keeps k excitations out of N
    p = 0.3
    for k in range(1, 5):
        expected = (8 / 9) * p ** (4 - k) * (1 - p) ** k
        np.testing.assert_allclose(
            lambda_coefficient(ChannelSpec(ChannelFamily.AD), ONE_THIRD, p, k), expected, rtol=1e-14)
    with pytest.raises(DomainError):
        lambda_coefficient(ChannelSpec(ChannelFamily.AD), ONE_THIRD, p, 5)


@pytest.mark.parametrize("spec", FAMILIES, ids=lambda s: s.label)
def test_log_domain_agrees_with_plain(spec):
    params = GHZParams.from_alpha_sq(0.2, 20)
    for p in [0.0, 0.15, 0.6, 0.95]:
        plain = evolve(params, spec, p, log_domain=False)
        logged = evolve(params, spec, p, log_domain=True)
        assert logged.uses_log_domain and not plain.uses_log_domain
        nonzero = plain.lambdas > 0
        np.testing.assert_allclose(np.exp(logged.log_lambdas[nonzero]), plain.lambdas[nonzero], rtol=1e-11)
        assert np.all(np.isneginf(logged.log_lambdas[~nonzero]))
        if p < 1.0:
            np.testing.assert_allclose(math.exp(logged.log_abs_offdiag), abs(plain.offdiag), rtol=1e-12)


def test_large_n_uses_log_domain_without_underflow():
    params = GHZParams(1.0 / 3.0, math.sqrt(8.0) / 3.0, 400)
    state = evolve(params, ChannelSpec(ChannelFamily.DEPOLARIZING), 0.5)
    assert state.uses_log_domain
    np.testing.assert_allclose(state.trace(), 1.0, atol=1e-10)
    middle = log_lambda_coefficient(ChannelSpec(ChannelFamily.DEPOLARIZING), params, 0.02, 200)
    assert middle.sign == 1 and np.isfinite(middle.log_abs)
    # 0.99^200 0.01^200 is below the smallest normal float
    assert middle.log_abs < math.log(np.finfo(float).tiny)
    np.testing.assert_allclose(log_abs_offdiag(ChannelSpec(ChannelFamily.DEPOLARIZING), params, 0.5),
                               math.log(params.abs_ab) + 400 * math.log(0.5), rtol=1e-14)


def test_weight_probabilities_sum_to_one():
    params = GHZParams.from_alpha_sq(0.5, 10)
    probabilities = evolve(params, ChannelSpec(ChannelFamily.GAD, nbar=0.5), 0.4).weight_probabilities()
    assert probabilities.shape == (11,)
    np.testing.assert_allclose(probabilities.sum(), 1.0, atol=1e-13)


def test_signed_log_round_trip():
    assert SignedLog.from_value(0.0) == SignedLog(0, -math.inf)
    np.testing.assert_allclose(SignedLog.from_value(-2.5).value, -2.5, rtol=1e-15)
    assert SignedLog(1, 1000.0).value == math.inf


def test_hamming_weights():
    np.testing.assert_array_equal(hamming_weights(3), [0, 1, 1, 2, 1, 2, 2, 3])


def test_dense_from_symmetric_structure():
    state = evolve(ONE_THIRD, ChannelSpec(ChannelFamily.GAD, nbar=1.0), 0.4)
    dense = dense_from_symmetric(state)
    weights = hamming_weights(4)
    np.testing.assert_allclose(np.diag(dense.matrix).real, state.lambdas[weights], rtol=1e-15)
    assert dense.matrix[0, -1] == state.offdiag
    off = dense.matrix - np.diag(np.diag(dense.matrix))
    off[0, -1] = off[-1, 0] = 0
    assert not off.any()


def test_dense_from_symmetric_respects_capacity(monkeypatch):
    monkeypatch.delenv("GHZ_DECAY_DENSE_LIMIT", raising=False)
    state = evolve(GHZParams.from_alpha_sq(0.5, 11), ChannelSpec(ChannelFamily.AD), 0.1)
    with pytest.raises(CapacityError):
        dense_from_symmetric(state)


@pytest.mark.parametrize("spec", FAMILIES, ids=lambda s: s.label)
def test_trace_is_one_at_ten_thousand_qubits(spec):
    params = GHZParams.from_alpha_sq(0.3, 10 ** 4, alpha_phase=0.2)
    for p in (0.001, 0.3, 0.9):
        state = evolve(params, spec, p)
        assert state.uses_log_domain
        np.testing.assert_allclose(state.trace(), 1.0, atol=1e-10)
