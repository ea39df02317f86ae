"""Brute-force statevector simulation of the QAOA circuits.

Amplitudes are little-endian: qubit ``q`` is bit ``q`` of the basis index.
This module shares no formulas with the analytic engines; it only applies
gates and measures diagonal observables.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TooManyQubits
from .hypergraph import WeightedHypergraph
from .params import GmParams, IsingWeights, MixerAxes, PmParams, ProductStateParams

DEFAULT_ORACLE_CAP = 16


def _check_cap(n: int, cap: int | None) -> None:
    if cap is not None and n > cap:
        raise TooManyQubits(n, cap)


def z_signs(n: int, vertices) -> np.ndarray:
    """(-1)^(parity of x on vertices) for every basis index x."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    x = np.arange(1 << n, dtype=np.int64) & mask
    parity = np.zeros(1 << n, dtype=np.int64)
    while mask:
        low = mask & -mask
        parity ^= (x & low) != 0
        mask ^= low
    return 1.0 - 2.0 * parity


def prepare_product_state(state: ProductStateParams) -> np.ndarray:
    psi = np.ones(1, dtype=complex)
    for lam, om in zip(state.lam, state.omega):
        q = np.array([np.exp(-0.5j * lam) * np.cos(om / 2), np.exp(0.5j * lam) * np.sin(om / 2)])
        # new qubit becomes the most significant bit
        psi = np.kron(q, psi)
    return psi


def plus_state(n: int) -> np.ndarray:
    return np.full(1 << n, 2.0 ** (-n / 2), dtype=complex)


def apply_diagonal_phase(psi: np.ndarray, n: int, terms) -> np.ndarray:
    """Multiply by exp(-i sum_t theta_t Z_{S_t}) for terms (S_t, theta_t)."""
    phase = np.zeros(1 << n)
    for verts, theta in terms:
        if theta == 0.0:
            continue
        phase += theta * z_signs(n, verts)
    return psi * np.exp(-1j * phase)


def apply_phase(psi: np.ndarray, G: WeightedHypergraph, gamma, include_constant: bool = False) -> np.ndarray:
    gamma = np.asarray(gamma, dtype=float)
    terms = [
        (e, g * wp)
        for e, g, wp in zip(G.edges, gamma, G.phase_weights)
        if e or include_constant
    ]
    return apply_diagonal_phase(psi, G.n, terms)


def _apply_1q(psi: np.ndarray, n: int, q: int, U: np.ndarray) -> np.ndarray:
    t = psi.reshape(1 << (n - 1 - q), 2, 1 << q)
    return np.einsum("ab,xby->xay", U, t).reshape(-1)


def apply_product_mixer(psi: np.ndarray, axes: MixerAxes, beta) -> np.ndarray:
    """Apply prod_u exp(-i beta_u r_u . P_u)."""
    n = axes.n
    for u in range(n):
        rx, ry, rz = axes[u]
        c, s = np.cos(beta[u]), np.sin(beta[u])
        U = np.array(
            [[c - 1j * s * rz, -1j * s * (rx - 1j * ry)],
             [-1j * s * (rx + 1j * ry), c + 1j * s * rz]]
        )
        psi = _apply_1q(psi, n, u, U)
    return psi


def apply_grover_mixer(psi: np.ndarray, omega_vec: np.ndarray, beta: float) -> np.ndarray:
    """Apply exp(-i beta |Omega><Omega|) as a rank-one update."""
    overlap = np.vdot(omega_vec, psi)
    return psi + (np.exp(-1j * beta) - 1.0) * overlap * omega_vec


def measure_z_edge(psi: np.ndarray, e, n: int | None = None) -> float:
    if n is None:
        n = int(psi.shape[0]).bit_length() - 1
    probs = np.abs(psi) ** 2
    return float(np.dot(probs, z_signs(n, e)))


@dataclass(frozen=True)
class PmOracleResult:
    vertex: np.ndarray  # <Z_u>
    edge: np.ndarray  # <Z_u Z_v> in graph edge order
    total: float


@dataclass(frozen=True)
class GmOracleResult:
    edge: np.ndarray  # <Z_e> in hypergraph edge order
    total: float


def pm_state(G: WeightedHypergraph, weights: IsingWeights, params: PmParams, axes: MixerAxes,
             include_constant: bool = False) -> np.ndarray:
    n = G.n
    terms = [((u,), params.gamma_vertex[u] * weights.h_phase[u]) for u in range(n)]
    terms += [(e, params.gamma_edge[i] * weights.J_phase[i]) for i, e in enumerate(G.edges)]
    if include_constant:
        terms.append(((), params.gamma_const * weights.a_phase))
    psi = apply_diagonal_phase(plus_state(n), n, terms)
    return apply_product_mixer(psi, axes, params.beta)


def run_pm(G: WeightedHypergraph, weights: IsingWeights, params: PmParams, axes: MixerAxes,
           cap: int | None = DEFAULT_ORACLE_CAP, include_constant: bool = False) -> PmOracleResult:
    _check_cap(G.n, cap)
    psi = pm_state(G, weights, params, axes, include_constant)
    zu = np.array([measure_z_edge(psi, (u,), G.n) for u in range(G.n)])
    zuv = np.array([measure_z_edge(psi, e, G.n) for e in G.edges])
    total = weights.a + float(np.dot(weights.h, zu)) + float(np.dot(weights.J, zuv))
    return PmOracleResult(zu, zuv, total)


def gm_state(G: WeightedHypergraph, params: GmParams, state: ProductStateParams | None,
             include_constant: bool = False) -> np.ndarray:
    """Final GM-QAOA state; ``state=None`` means the uniform superposition."""
    omega_vec = plus_state(G.n) if state is None else prepare_product_state(state)
    psi = omega_vec.copy()
    for layer in range(params.p):
        psi = apply_phase(psi, G, params.gamma[layer], include_constant)
        psi = apply_grover_mixer(psi, omega_vec, params.beta[layer])
    return psi


def run_gm(G: WeightedHypergraph, params: GmParams, state: ProductStateParams | None = None,
           cap: int | None = DEFAULT_ORACLE_CAP, include_constant: bool = False) -> GmOracleResult:
    _check_cap(G.n, cap)
    psi = gm_state(G, params, state, include_constant)
    z = np.array([measure_z_edge(psi, e, G.n) for e in G.edges])
    return GmOracleResult(z, float(np.dot(G.weights, z)))
