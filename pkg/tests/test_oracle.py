import itertools
import math

import numpy as np
import pytest

from GHZDecay.GDChannels import ChannelFamily, ChannelSpec
from GHZDecay.GDConfig import Config
from GHZDecay.GDErrors import CapacityError, DomainError
from GHZDecay.GDNegativity import min_pt_eigenvalue_at
from GHZDecay.GDOracle import (
    DenseState, QubitSubset, all_bipartitions, apply_local_kraus, build_initial, evolve_dense,
    min_eigenvalue, negativity_dense, partial_transpose, representative_subsets, subsets_of_size
)
from GHZDecay.GDState import GHZParams, dense_from_symmetric, evolve

FAMILIES = [
    ChannelSpec(ChannelFamily.AD),
    ChannelSpec(ChannelFamily.GAD, nbar=1.0),
    ChannelSpec(ChannelFamily.DIFFUSIVE),
    ChannelSpec(ChannelFamily.DEPOLARIZING),
    ChannelSpec(ChannelFamily.PHASE_DAMPING),
]

AMPLITUDES = [
    (math.sqrt(0.5), math.sqrt(0.5)),
    (1.0 / 3.0, math.sqrt(8.0) / 3.0),
    (0.9, math.sqrt(1.0 - 0.81)),
]

GRID = np.linspace(0.0, 1.0, 21)


@pytest.fixture(autouse=True)
def default_dense_limit(monkeypatch):
    monkeypatch.delenv(Config.DENSE_LIMIT_ENV, raising=False)


def test_initial_product_state():
    rho = build_initial(GHZParams(1.0, 0.0, 3))
    expected = np.zeros((8, 8))
    expected[0, 0] = 1.0
    np.testing.assert_allclose(rho.matrix, expected)
    np.testing.assert_allclose(rho.purity(), 1.0, rtol=1e-15)


def test_initial_matches_symmetric_form():
    params = GHZParams.from_alpha_sq(0.3, 5, alpha_phase=0.2, beta_phase=1.3)
    dense = build_initial(params)
    symmetric = dense_from_symmetric(evolve(params, ChannelSpec(ChannelFamily.AD), 0.0))
    np.testing.assert_allclose(dense.matrix, symmetric.matrix, atol=1e-15)
    np.testing.assert_allclose(dense.purity(), 1.0, rtol=1e-14)


@pytest.mark.parametrize("spec", FAMILIES, ids=lambda s: s.label)
def test_zero_probability_is_identity(spec):
    rho = build_initial(GHZParams.from_alpha_sq(0.4, 4, beta_phase=0.5))
    np.testing.assert_allclose(evolve_dense(rho, spec, 0.0).matrix, rho.matrix, atol=1e-15)


def test_full_depolarization_and_damping():
    rho = build_initial(GHZParams.from_alpha_sq(0.7, 3))
    mixed = evolve_dense(rho, ChannelSpec(ChannelFamily.DEPOLARIZING), 1.0)
    np.testing.assert_allclose(mixed.matrix, np.eye(8) / 8, atol=1e-15)
    ground = evolve_dense(rho, ChannelSpec(ChannelFamily.AD), 1.0)
    expected = np.zeros((8, 8))
    expected[0, 0] = 1.0
    np.testing.assert_allclose(ground.matrix, expected, atol=1e-15)


@pytest.mark.parametrize("spec", FAMILIES, ids=lambda s: s.label)
def test_qubit_order_does_not_matter(spec):
    rho = build_initial(GHZParams.from_alpha_sq(0.25, 4, alpha_phase=1.0))
    reference = evolve_dense(rho, spec, 0.37)
    for order in ([3, 1, 0, 2], [2, 3, 1, 0]):
        permuted = evolve_dense(rho, spec, 0.37, order=order)
        np.testing.assert_allclose(permuted.matrix, reference.matrix, atol=1e-13)
    with pytest.raises(DomainError):
        evolve_dense(rho, spec, 0.37, order=[0, 0, 1, 2])


def test_local_kraus_acts_on_the_right_qubit():
    # flip qubit 1 of |000>: X on the middle leg gives |010>, index 2
    rho = np.zeros((8, 8), dtype=complex)
    rho[0, 0] = 1.0
    flip = np.array([[0, 1], [1, 0]], dtype=complex)
    out = apply_local_kraus(rho, 3, [flip], 1)
    assert out[2, 2] == 1.0
    assert np.count_nonzero(out) == 1
    with pytest.raises(DomainError):
        apply_local_kraus(rho, 3, [flip], 3)


@pytest.mark.parametrize("spec", FAMILIES, ids=lambda s: s.label)
@pytest.mark.parametrize("n", [2, 3, 5, 6])
def test_dense_evolution_matches_symmetric_state(spec, n):
    params = GHZParams.from_alpha_sq(0.3, n, beta_phase=-0.8)
    initial = build_initial(params)
    for p in np.linspace(0.0, 1.0, 6):
        dense = evolve_dense(initial, spec, p)
        np.testing.assert_allclose(dense.trace(), 1.0, atol=1e-12)
        assert dense.hermiticity_error() <= 1e-12
        np.testing.assert_allclose(dense.matrix, dense_from_symmetric(evolve(params, spec, p)).matrix,
                                   atol=1e-14)


def test_partial_transpose_is_an_involution():
    rho = evolve_dense(build_initial(GHZParams.from_alpha_sq(0.6, 4, beta_phase=0.9)),
                       ChannelSpec(ChannelFamily.GAD, nbar=0.5), 0.3)
    subset = QubitSubset((1, 3), 4)
    twice = partial_transpose(partial_transpose(rho, subset), subset)
    np.testing.assert_array_equal(twice.matrix, rho.matrix)
    np.testing.assert_allclose(partial_transpose(rho, subset).trace(), 1.0, atol=1e-14)


def test_bell_state_negativity():
    bell = build_initial(GHZParams.from_alpha_sq(0.5, 2))
    result = negativity_dense(bell, QubitSubset((0,), 2))
    np.testing.assert_allclose(result.min_eigenvalue, -0.5, atol=1e-14)
    np.testing.assert_allclose(result.negativity, 0.5, atol=1e-14)
    assert result.negative_count == 1


def test_product_state_is_ppt():
    plus = np.full((2, 2), 0.5)
    mixed = np.diag([0.3, 0.7])
    rho = DenseState(np.kron(plus, mixed), 2)
    assert min_eigenvalue(partial_transpose(rho, QubitSubset((0,), 2))) >= -1e-15
    assert negativity_dense(rho, QubitSubset((1,), 2)).negativity == 0.0


def test_subset_validation():
    with pytest.raises(DomainError):
        QubitSubset((), 3)
    with pytest.raises(DomainError):
        QubitSubset((0, 1, 2), 3)
    with pytest.raises(DomainError):
        QubitSubset((0, 0), 3)
    with pytest.raises(DomainError):
        QubitSubset((3,), 3)
    assert QubitSubset((2, 0), 4).indices == (0, 2)
    assert QubitSubset((0, 2), 4).complement().indices == (1, 3)


def test_subset_enumeration():
    assert len(list(subsets_of_size(5, 2))) == 10
    assert len(list(all_bipartitions(5))) == 2 ** 4 - 1
    assert [s.indices for s in representative_subsets(5)] == [(0,), (0, 1)]


def test_dense_state_validation():
    with pytest.raises(DomainError):
        DenseState(np.eye(3) / 3, 2)
    with pytest.raises(DomainError):
        DenseState(np.array([[1, 1], [0, 0]]), 1)
    with pytest.raises(DomainError):
        DenseState(np.eye(2), 1)
    assert DenseState(np.eye(2), 1, declared_trace=None).trace() == 2.0


def test_capacity_limit(monkeypatch):
    with pytest.raises(CapacityError):
        build_initial(GHZParams.from_alpha_sq(0.5, 13))
    with pytest.raises(CapacityError):
        build_initial(GHZParams.from_alpha_sq(0.5, 11))
    monkeypatch.setenv(Config.DENSE_LIMIT_ENV, "3")
    with pytest.raises(CapacityError):
        build_initial(GHZParams.from_alpha_sq(0.5, 4))
    monkeypatch.setenv(Config.DENSE_LIMIT_ENV, "99")
    assert Config.get_dense_limit() == Config.HARD_DENSE_LIMIT
    monkeypatch.setenv(Config.DENSE_LIMIT_ENV, "many")
    assert Config.get_dense_limit() == Config.DENSE_LIMIT


@pytest.mark.parametrize("spec", FAMILIES, ids=lambda s: s.label)
@pytest.mark.parametrize("amplitudes", AMPLITUDES, ids=["balanced", "one-third", "0.9"])
def test_closed_form_matches_dense_spectrum(spec, amplitudes):
    alpha, beta = amplitudes
    worst_count = 0
    for n in range(2, 9):
        params = GHZParams(alpha, beta, n)
        initial = build_initial(params)
        for p in GRID:
            rho = evolve_dense(initial, spec, float(p))
            for k in range(1, n // 2 + 1):
                closed = min_pt_eigenvalue_at(spec, params, float(p), k)
                dense = negativity_dense(rho, QubitSubset.first(k, n))
                assert abs(closed.min_eigenvalue - dense.min_eigenvalue) <= 1e-10
                assert abs(closed.negativity - dense.negativity) <= 1e-10
                if closed.Lambda_k <= 0.0:
                    assert abs(closed.Lambda_k - dense.min_eigenvalue) <= 1e-10
                worst_count = max(worst_count, dense.negative_count)
    assert worst_count <= 1


def test_negativity_depends_only_on_cut_size():
    params = GHZParams.from_alpha_sq(0.2, 5, alpha_phase=0.6)
    rho = evolve_dense(build_initial(params), ChannelSpec(ChannelFamily.GAD, nbar=0.3), 0.25)
    for k in (1, 2):
        values = [negativity_dense(rho, QubitSubset(c, 5)).negativity
                  for c in itertools.combinations(range(5), k)]
        np.testing.assert_allclose(values, values[0], atol=1e-13)
