import math

import numpy as np
import pytest

from spacetime_pdm import channels as ch
from spacetime_pdm import geometry as geo
from spacetime_pdm.errors import InvalidArgument, ValidationError
from spacetime_pdm.pauli import I2, SIGMA, SWAP, X, Y, Z, partial_transpose_A
from spacetime_pdm.pdm import (
    PDM,
    QubitState,
    causality_f_tr,
    choi_of_pdm,
    corr_vec3,
    correlation,
    diagonal_correlations,
    jamiolkowski_operator,
    mix_pdm,
    negativity,
    pdm_from_correlations,
    pdm_jordan,
    pdm_spatial,
    pdm_temporal,
    temporal_pdm_batch,
    tables_batch,
)

from conftest import random_bloch, random_density, random_kraus, random_unitary

MIXED = QubitState.maximally_mixed()
ZERO = QubitState.from_bloch((0, 0, 1))
PHI_PLUS = np.array([1, 0, 0, 1]) / np.sqrt(2)
SINGLET = np.array([0, 1, -1, 0]) / np.sqrt(2)


def random_channel(rng):
    return ch.Channel(kraus=random_kraus(rng))


def random_unital(rng, n=3):
    w = rng.dirichlet(np.ones(n))
    return ch.Channel(kraus=tuple(math.sqrt(p) * random_unitary(rng) for p in w))


def random_state(rng, pure=False):
    return QubitState.from_bloch(random_bloch(rng, pure))


def test_identity_channel_on_mixed_input_gives_swap_half():
    r = pdm_temporal(MIXED, ch.identity())
    assert np.allclose(r.matrix, SWAP / 2, atol=1e-12)
    assert corr_vec3(r) == pytest.approx((1, 1, 1))
    assert causality_f_tr(r) == pytest.approx(1.0, abs=1e-12)


def test_fully_depolarizing_gives_maximally_mixed_pdm():
    r = pdm_temporal(MIXED, ch.fully_depolarizing())
    assert np.allclose(r.matrix, np.eye(4) / 4)
    assert corr_vec3(r) == pytest.approx((0, 0, 0), abs=1e-12)


def test_extremal_point_matches_trig_evaluation():
    u, v = 2 * math.pi / 3, math.pi / 3
    oracle = (math.cos(u), math.cos(v), math.cos(u - v))
    assert oracle == pytest.approx((-0.5, 0.5, 0.5))
    r = pdm_temporal(ZERO, ch.extremal_channel(ch.ExtremalParams(u, v)))
    assert corr_vec3(r) == pytest.approx(oracle, abs=1e-12)


def test_trig_parametrisation_over_grid():
    for u in np.linspace(0, 2 * math.pi, 13):
        for v in np.linspace(0, math.pi, 7):
            r = pdm_temporal(ZERO, ch.extremal_channel(ch.ExtremalParams(u, v)))
            assert corr_vec3(r) == pytest.approx((math.cos(u), math.cos(v), math.cos(u - v)), abs=1e-12)


def test_jordan_path_examples(rng):
    eps = random_channel(rng)
    r = pdm_jordan(MIXED, eps)
    e = jamiolkowski_operator(eps)
    assert np.allclose(r.matrix, e / 2, atol=1e-12)
    assert np.allclose(r.matrix, partial_transpose_A(eps.choi), atol=1e-12)
    rho = random_density(rng, 2)
    r_id = pdm_jordan(rho, ch.identity())
    a = np.kron(rho, I2 / 2)
    assert np.allclose(r_id.matrix, a @ SWAP + SWAP @ a)


def test_construction_paths_agree(rng):
    for _ in range(1000):
        rho = random_state(rng)
        eps = random_channel(rng)
        assert np.max(np.abs(pdm_temporal(rho, eps).matrix - pdm_jordan(rho, eps).matrix)) <= 1e-10


def test_spatial_examples():
    assert corr_vec3(pdm_spatial(np.outer(PHI_PLUS, PHI_PLUS))) == pytest.approx((1, -1, 1))
    assert corr_vec3(pdm_spatial(np.eye(4) / 4)) == pytest.approx((0, 0, 0))
    oracle = tuple(float((SINGLET @ np.kron(s, s) @ SINGLET).real) for s in (X, Y, Z))
    assert oracle == pytest.approx((-1, -1, -1))
    assert corr_vec3(pdm_spatial(np.outer(SINGLET, SINGLET))) == pytest.approx(oracle)
    assert causality_f_tr(pdm_spatial(np.outer(SINGLET, SINGLET))) == 0.0


def test_spatial_rejects_non_psd():
    with pytest.raises(ValidationError):
        pdm_spatial(SWAP / 2)


def test_from_correlations_examples():
    assert np.allclose(pdm_from_correlations(np.eye(4)).matrix, SWAP / 2)
    t = np.zeros((4, 4))
    t[0, 0] = 1
    assert np.allclose(pdm_from_correlations(t).matrix, np.eye(4) / 4)
    t = np.diag([1.0, 1.0, -1.0, 1.0])
    r = pdm_from_correlations(t)
    w, v = np.linalg.eigh(r.matrix)
    assert np.allclose(w, [0, 0, 0, 1], atol=1e-12)
    assert abs(v[:, -1] @ PHI_PLUS) == pytest.approx(1.0)
    with pytest.raises(InvalidArgument):
        pdm_from_correlations(np.eye(4) * 0.5)


def test_mix_pdm_examples():
    swap_half = pdm_temporal(MIXED, ch.identity())
    bell = pdm_spatial(np.outer(PHI_PLUS, PHI_PLUS))
    assert corr_vec3(mix_pdm([swap_half, bell], [0.5, 0.5])) == pytest.approx((1, 0, 1))
    vertices = [pdm_temporal(MIXED, ch.pauli_unitary(k)) for k in range(4)]
    assert corr_vec3(mix_pdm(vertices, [0.25] * 4)) == pytest.approx((0, 0, 0), abs=1e-12)
    for p in np.linspace(0, 1, 11):
        # edge of the cube from (1, -1, 1) to (1, 1, 1)
        c = corr_vec3(mix_pdm([swap_half, bell], [p, 1 - p]))
        assert c == pytest.approx((1, 2 * p - 1, 1))
        assert geo.in_cube(c)
    with pytest.raises(InvalidArgument):
        mix_pdm([bell, bell], [0.5, 0.6])


def test_mixed_table_is_mixture_of_tables(rng):
    pdms = [pdm_temporal(random_state(rng), random_channel(rng)) for _ in range(3)]
    w = rng.dirichlet(np.ones(3))
    assert np.allclose(mix_pdm(pdms, w).table, sum(wi * p.table for wi, p in zip(w, pdms)))


def test_correlation_queries(rng):
    swap_half = pdm_temporal(MIXED, ch.identity())
    for k in (1, 2, 3):
        assert correlation(swap_half, k, k) == pytest.approx(1.0)
    for _ in range(100):
        rho = random_state(rng)
        r = pdm_temporal(rho, random_channel(rng))
        assert correlation(r, 0, 0) == pytest.approx(1.0)
        r_id = pdm_temporal(rho, ch.identity())
        for k in (1, 2, 3):
            for l in (1, 2, 3):
                if k != l:
                    assert correlation(r_id, k, l) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(InvalidArgument):
        correlation(swap_half, 4, 0)


def test_tables_bounded_by_one(rng):
    for _ in range(500):
        r = pdm_temporal(random_state(rng, pure=rng.random() < 0.5), random_channel(rng))
        assert np.max(np.abs(r.table)) <= 1 + 1e-9
        assert r.table[0, 0] == pytest.approx(1.0)


def test_fast_path_matches_matrix_construction(rng):
    for _ in range(300):
        state = random_state(rng)
        eps = random_channel(rng)
        fast = diagonal_correlations(state.bloch, eps.ptm)
        assert fast == pytest.approx(corr_vec3(pdm_temporal(state, eps)), abs=1e-12)
    # normalisation check: the identity map must give unit correlations
    assert diagonal_correlations((0, 0, 0), np.eye(4)) == pytest.approx((1, 1, 1))


def test_causality_examples(rng):
    assert causality_f_tr(pdm_spatial(random_density(rng))) == 0.0
    r = pdm_temporal(MIXED, ch.dephasing(1))
    assert np.linalg.eigvalsh(r.matrix)[0] >= -1e-12
    assert causality_f_tr(r) == pytest.approx(0.0, abs=1e-12)


def test_negativity_examples():
    assert negativity(np.eye(4) / 4) == 0.0
    assert negativity(np.outer(PHI_PLUS, PHI_PLUS)) == pytest.approx(0.5)
    singlet = np.outer(SINGLET, SINGLET)
    for p, expected in [(1 / 3, 0.0), (0.2, 0.0), (0.6, (3 * 0.6 - 1) / 4), (1.0, 0.5)]:
        werner = p * singlet + (1 - p) * np.eye(4) / 4
        assert negativity(werner) == pytest.approx(expected, abs=1e-12)
    with pytest.raises(ValidationError):
        negativity(SWAP / 2)


def test_choi_of_pdm_examples(rng):
    res = choi_of_pdm(pdm_temporal(MIXED, ch.identity()))
    assert np.allclose(res.matrix, np.outer(PHI_PLUS, PHI_PLUS))
    assert res.premise_holds
    assert np.allclose(choi_of_pdm(PDM.from_matrix(np.eye(4) / 4)).matrix, np.eye(4) / 4)
    # a pure input through the identity: partial transpose is not a state
    res = choi_of_pdm(pdm_temporal(ZERO, ch.identity()))
    assert not res.premise_holds and res.min_eigenvalue < -1e-3


def test_causality_is_twice_choi_negativity(rng):
    for _ in range(300):
        eps = random_channel(rng)
        r = pdm_temporal(MIXED, eps)
        res = choi_of_pdm(r)
        assert res.premise_holds
        assert np.allclose(res.matrix, eps.choi, atol=1e-12)
        assert abs(causality_f_tr(r) - 2 * negativity(res.matrix)) <= 1e-9


def test_unital_channels_ignore_the_input_state(rng):
    for _ in range(20):
        eps = random_unital(rng)
        assert ch.is_unital(eps)
        pts = np.array([corr_vec3(pdm_temporal(random_state(rng), eps)) for _ in range(100)])
        assert np.max(np.ptp(pts, axis=0)) <= 1e-9
        assert geo.in_tetra_t(pts[0])


def test_maximally_mixed_input_lands_in_temporal_tetrahedron(rng):
    for _ in range(300):
        eps = ch.extremal_channel(ch.ExtremalParams(rng.uniform(0, 2 * math.pi), rng.uniform(0, math.pi)))
        for e in (eps, random_channel(rng)):
            assert geo.in_tetra_t(corr_vec3(pdm_temporal(MIXED, e)))


def test_batch_path_matches_scalar_path(rng):
    states = [random_state(rng) for _ in range(20)]
    kraus = np.array([random_kraus(rng) for _ in range(20)])
    mats = temporal_pdm_batch(np.array([s.matrix for s in states]), kraus)
    for s, k, m in zip(states, kraus, mats):
        assert np.allclose(m, pdm_temporal(s, ch.Channel(kraus=tuple(k))).matrix, atol=1e-12)
    assert np.allclose(tables_batch(mats)[0], PDM.from_matrix(mats[0]).table)


def test_state_validation():
    with pytest.raises(ValidationError):
        QubitState.from_bloch((1, 1, 0))
    with pytest.raises(ValidationError):
        QubitState.from_matrix(np.diag([1.5, -0.5]))
    s = QubitState.from_matrix(np.array([[0.5, 0.5], [0.5, 0.5]]))
    assert s.bloch == pytest.approx((1, 0, 0))


def test_pdm_validation():
    with pytest.raises(ValidationError):
        PDM.from_matrix(np.eye(4))
    with pytest.raises(ValueError):
        PDM.from_matrix(np.triu(np.ones((4, 4))) / 4)
