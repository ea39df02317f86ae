import math

import numpy as np
import pytest

from exactqaoa import oracle
from exactqaoa.errors import TooManyQubits
from exactqaoa.hypergraph import WeightedHypergraph
from exactqaoa.params import GmParams, IsingWeights, MixerAxes, PmParams, ProductStateParams

from helpers import (
    PAULI,
    dense_phase_unitary,
    dense_product_mixer,
    expval,
    rand_axes,
    rand_hypergraph,
    rand_state,
    z_string,
)
from scipy.linalg import expm


def test_plus_state_from_product_angles():
    psi = oracle.prepare_product_state(ProductStateParams.plus(4))
    assert np.allclose(psi, 0.25)


def test_omega_zero_is_all_zeros_state():
    psi = oracle.prepare_product_state(ProductStateParams(np.array([0.3, 1.1, 2.0]), np.zeros(3)))
    assert abs(abs(psi[0]) - 1) < 1e-15
    assert np.allclose(psi[1:], 0)


def test_product_state_marginals():
    rng = np.random.default_rng(0)
    st = rand_state(rng, 3)
    psi = oracle.prepare_product_state(st)
    for u in range(3):
        single = np.array([np.exp(-0.5j * st.lam[u]) * np.cos(st.omega[u] / 2),
                           np.exp(0.5j * st.lam[u]) * np.sin(st.omega[u] / 2)])
        ref = expval(single, PAULI["Z"]).real
        assert abs(oracle.measure_z_edge(psi, (u,), 3) - ref) < 1e-14
        assert abs(ref - np.cos(st.omega[u])) < 1e-14
    assert abs(oracle.measure_z_edge(psi, (0, 2), 3) - np.cos(st.omega[0]) * np.cos(st.omega[2])) < 1e-14


def test_omega_reflection_is_the_same_state_up_to_phase():
    a = ProductStateParams([0.4], [4.0])
    b = ProductStateParams([0.4 + np.pi], [2 * np.pi - 4.0])
    assert np.allclose(a.omega, b.omega) and np.allclose(a.lam, b.lam)
    raw = np.array([np.exp(-0.2j) * np.cos(2.0), np.exp(0.2j) * np.sin(2.0)])
    got = oracle.prepare_product_state(a)
    assert abs(abs(np.vdot(raw, got)) - 1) < 1e-14


def test_phase_zero_angle_is_identity():
    rng = np.random.default_rng(1)
    G = rand_hypergraph(rng, 3, 5)
    psi = oracle.prepare_product_state(rand_state(rng, 3))
    assert np.array_equal(oracle.apply_phase(psi, G, np.zeros(G.m)), psi)


def test_single_vertex_phase():
    G = WeightedHypergraph.from_edges(1, [((0,), 1.0)])
    out = oracle.apply_phase(np.array([1, 1], dtype=complex) / np.sqrt(2), G, [np.pi])
    assert np.allclose(out, np.array([np.exp(-1j * np.pi), np.exp(1j * np.pi)]) / np.sqrt(2))


@pytest.mark.parametrize("seed", range(4))
def test_phase_matches_dense_exponential(seed):
    rng = np.random.default_rng(seed)
    n = 4
    G = rand_hypergraph(rng, n, 7, allow_empty=False)
    gamma = rng.uniform(-2, 2, G.m)
    psi = oracle.prepare_product_state(rand_state(rng, n))
    U = dense_phase_unitary(n, [(e, g * wp) for e, g, wp in zip(G.edges, gamma, G.phase_weights)])
    out = oracle.apply_phase(psi, G, gamma)
    assert np.max(np.abs(out - U @ psi)) < 1e-12
    assert abs(np.linalg.norm(out) - 1) < 1e-12


def test_phase_can_include_empty_edge_as_global_phase():
    G = WeightedHypergraph.from_edges(2, [((), 1.0, 0.7), ((0, 1), 1.0)])
    psi = oracle.plus_state(2)
    a = oracle.apply_phase(psi, G, [0.5, 0.3])
    b = oracle.apply_phase(psi, G, [0.5, 0.3], include_constant=True)
    assert np.allclose(b, np.exp(-1j * 0.35) * a)


def test_product_mixer_identity_and_vanilla():
    rng = np.random.default_rng(2)
    psi = oracle.prepare_product_state(rand_state(rng, 2))
    axes = MixerAxes(np.tile([1.0, 0, 0], (2, 1)))
    assert np.allclose(oracle.apply_product_mixer(psi, axes, np.zeros(2)), psi)
    beta = np.array([0.3, -1.2])
    rx = [np.cos(b) * np.eye(2) - 1j * np.sin(b) * PAULI["X"] for b in beta]
    assert np.allclose(oracle.apply_product_mixer(psi, axes, beta), np.kron(rx[1], rx[0]) @ psi)


@pytest.mark.parametrize("seed", range(4))
def test_product_mixer_matches_dense_exponential(seed):
    rng = np.random.default_rng(seed)
    axes = rand_axes(rng, 3)
    beta = rng.uniform(-3, 3, 3)
    psi = oracle.prepare_product_state(rand_state(rng, 3))
    out = oracle.apply_product_mixer(psi, axes, beta)
    assert np.max(np.abs(out - dense_product_mixer(axes, beta) @ psi)) < 1e-12
    assert abs(np.linalg.norm(out) - 1) < 1e-12


@pytest.mark.parametrize("seed", range(4))
def test_grover_mixer_matches_dense_exponential(seed):
    rng = np.random.default_rng(seed)
    n = 3
    omega = oracle.prepare_product_state(rand_state(rng, n))
    psi = rng.normal(size=8) + 1j * rng.normal(size=8)
    psi /= np.linalg.norm(psi)
    beta = rng.uniform(-3, 3)
    U = expm(-1j * beta * np.outer(omega, omega.conj()))
    out = oracle.apply_grover_mixer(psi, omega, beta)
    assert np.max(np.abs(out - U @ psi)) < 1e-12
    assert abs(np.linalg.norm(out) - 1) < 1e-12
    assert np.allclose(oracle.apply_grover_mixer(psi, omega, 0.0), psi)
    assert np.allclose(oracle.apply_grover_mixer(omega, omega, beta), np.exp(-1j * beta) * omega)


def test_measure_basics():
    assert oracle.measure_z_edge(oracle.plus_state(3), (0, 2)) == pytest.approx(0, abs=1e-15)
    zero = np.zeros(8, dtype=complex)
    zero[0] = 1
    assert oracle.measure_z_edge(zero, (0, 1, 2)) == 1
    assert oracle.measure_z_edge(zero, ()) == 1


def test_measure_matches_dense_observable():
    rng = np.random.default_rng(5)
    psi = rng.normal(size=16) + 1j * rng.normal(size=16)
    psi /= np.linalg.norm(psi)
    for e in [(0,), (1, 3), (0, 2, 3)]:
        assert abs(oracle.measure_z_edge(psi, e, 4) - expval(psi, z_string(4, e)).real) < 1e-14


def test_run_pm_zero_angles_is_half_the_weight():
    G = WeightedHypergraph.graph(3, [(0, 1), (1, 2), (0, 2)], [1.0, 2.0, 3.0])
    w = IsingWeights.same(3.0, np.zeros(3), -0.5 * np.array(G.weights))
    res = oracle.run_pm(G, w, PmParams.uniform(3, 3, 0.0, 0.0), MixerAxes(np.tile([1.0, 0, 0], (3, 1))))
    assert res.total == pytest.approx(3.0, abs=1e-15)


def test_run_totals_are_weighted_sums():
    rng = np.random.default_rng(8)
    G = rand_hypergraph(rng, 4, 6)
    res = oracle.run_gm(G, GmParams(rng.uniform(-1, 1, (2, G.m)), [0.3, 0.8]), rand_state(rng, 4))
    assert res.total == float(np.dot(G.weights, res.edge))


def test_single_edge_gm_hand_computation():
    # one edge {0,1} on |s>, with t = gamma * w'
    g, b, wp = 0.7, 1.1, 0.9
    G = WeightedHypergraph.from_edges(2, [((0, 1), 1.0, wp)])
    res = oracle.run_gm(G, GmParams([[g]], [b]))
    t = g * wp
    # amplitudes after phase: e^{-it} on even parity, e^{+it} on odd parity
    # overlap <s|psi> = cos t; mixer adds (e^{-ib}-1) cos t to every amplitude
    c = (np.exp(-1j * b) - 1) * np.cos(t) / 2
    even = np.exp(-1j * t) / 2 + c
    odd = np.exp(1j * t) / 2 + c
    assert res.edge[0] == pytest.approx(2 * abs(even) ** 2 - 2 * abs(odd) ** 2, abs=1e-14)


def test_oracle_cap():
    G = WeightedHypergraph.graph(5, [(0, 1)])
    with pytest.raises(TooManyQubits):
        oracle.run_gm(G, GmParams([[0.1]], [0.2]), cap=4)
    w = IsingWeights.same(0.0, np.zeros(5), [1.0])
    with pytest.raises(TooManyQubits):
        oracle.run_pm(G, w, PmParams.uniform(5, 1, 0.1, 0.1), MixerAxes(np.tile([1.0, 0, 0], (5, 1))), cap=4)
