"""Random instance generators and brute-force references shared by the tests.

Nothing here calls the analytic engines; the references are dense matrix
exponentials, Pauli-basis projections and exhaustive enumeration.
"""
from __future__ import annotations

import itertools
import math
from functools import reduce

import numpy as np
from scipy.linalg import expm

from exactqaoa.hypergraph import WeightedHypergraph
from exactqaoa.params import GmParams, IsingWeights, MixerAxes, PmParams, ProductStateParams

I2 = np.eye(2, dtype=complex)
PAULI = {
    "I": I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


# generators


def rand_graph(rng, n, prob=0.5, weights=None, phase=None) -> WeightedHypergraph:
    pairs = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < prob]
    w = rng.uniform(-2, 2, len(pairs)) if weights is None else weights
    wp = rng.uniform(-2, 2, len(pairs)) if phase is None else phase
    return WeightedHypergraph.graph(n, pairs, w, wp)


def rand_ising(rng, n, prob=0.5):
    G = rand_graph(rng, n, prob)
    weights = IsingWeights(rng.uniform(-2, 2), rng.uniform(-2, 2, n), np.array(G.weights),
                           rng.uniform(-2, 2), rng.uniform(-2, 2, n), np.array(G.phase_weights))
    return G, weights


def rand_axes(rng, n) -> MixerAxes:
    r = rng.normal(size=(n, 3))
    return MixerAxes(r / np.linalg.norm(r, axis=1, keepdims=True))


def rand_pm_params(rng, n, m) -> PmParams:
    return PmParams(rng.uniform(-np.pi, np.pi, n), rng.uniform(-np.pi, np.pi, n), rng.uniform(-np.pi, np.pi, m))


def rand_hypergraph(rng, n, m, max_arity=3, allow_empty=True, unit=False) -> WeightedHypergraph:
    pool = [e for k in range(0 if allow_empty else 1, max_arity + 1) for e in itertools.combinations(range(n), k)]
    idx = rng.choice(len(pool), size=min(m, len(pool)), replace=False)
    items = []
    for i in idx:
        w, wp = (1.0, 1.0) if unit else (rng.uniform(-2, 2), rng.uniform(-2, 2))
        items.append((pool[i], w, wp))
    return WeightedHypergraph.from_edges(n, items)


def rand_state(rng, n) -> ProductStateParams:
    return ProductStateParams(rng.uniform(0, 2 * np.pi, n), rng.uniform(0, np.pi, n))


def rand_gm_params(rng, p, m) -> GmParams:
    return GmParams(rng.uniform(-2, 2, (p, m)), rng.uniform(-np.pi, np.pi, p))


def petersen_sized(rng, weighted=True):
    """Random graph on 10 vertices with 15 edges, the size of the Petersen graph."""
    pairs = list(itertools.combinations(range(10), 2))
    chosen = [pairs[i] for i in sorted(rng.choice(len(pairs), 15, replace=False))]
    w = rng.uniform(0.2, 2, 15) if weighted else np.ones(15)
    return WeightedHypergraph.graph(10, chosen, w)


def complete_graph(n, weights=None):
    return WeightedHypergraph.graph(n, list(itertools.combinations(range(n), 2)), weights)


# dense operators, little-endian: qubit q is bit q of the index


def kron_ops(ops_by_qubit: dict, n: int) -> np.ndarray:
    mats = [ops_by_qubit.get(q, I2) for q in reversed(range(n))]
    return reduce(np.kron, mats)


def z_string(n, verts) -> np.ndarray:
    return kron_ops({v: PAULI["Z"] for v in verts}, n)


def pauli_string(n, labels: dict) -> np.ndarray:
    return kron_ops({q: PAULI[p] for q, p in labels.items()}, n)


def dense_phase_unitary(n, terms) -> np.ndarray:
    """exp(-i sum theta_S Z_S) as a dense matrix."""
    H = np.zeros((1 << n, 1 << n), dtype=complex)
    for verts, theta in terms:
        H += theta * z_string(n, verts)
    return expm(-1j * H)


def dense_product_mixer(axes, beta) -> np.ndarray:
    n = axes.n
    H = np.zeros((1 << n, 1 << n), dtype=complex)
    for u in range(n):
        B = sum(axes[u][k] * PAULI[p] for k, p in enumerate("XYZ"))
        H += beta[u] * kron_ops({u: B}, n)
    return expm(-1j * H)


def expval(psi, M) -> complex:
    return complex(np.vdot(psi, M @ psi))


def conjugated_z(beta, r) -> np.ndarray:
    """exp(i beta r.sigma) Z exp(-i beta r.sigma) by matrix exponentials."""
    B = sum(r[k] * PAULI[p] for k, p in enumerate("XYZ"))
    U = expm(-1j * beta * B)
    return U.conj().T @ PAULI["Z"] @ U


def pauli_coefficients_1q(M) -> dict:
    return {P: float(np.real(np.trace(PAULI[P] @ M)) / 2) for P in "IXYZ"}


def pauli_coefficients_2q(M) -> dict:
    """Coefficient of P_u Q_v, with u the first tensor factor."""
    out = {}
    for P in "IXYZ":
        for Q in "IXYZ":
            out[P + Q] = float(np.real(np.trace(np.kron(PAULI[P], PAULI[Q]) @ M)) / 4)
    return out


# combinatorial references


def brute_neighborhoods(G, u, v):
    nbrs = {x: set() for x in range(G.n)}
    for a, b in G.edges:
        nbrs[a].add(b)
        nbrs[b].add(a)
    u_minus_v = {g for g in nbrs[u] if g != v}
    v_minus_u = {g for g in nbrs[v] if g != u}
    common = {g for g in u_minus_v if g in nbrs[v]}
    return u_minus_v, u_minus_v - common, common, v_minus_u, v_minus_u - common


def parity_ok(G, subset_mask, odd=()):
    deg = [0] * G.n
    for i, e in enumerate(G.edges):
        if subset_mask >> i & 1:
            for x in e:
                deg[x] ^= 1
    return all(deg[x] == (1 if x in odd else 0) for x in range(G.n))


def exhaustive_family(G, odd=()):
    return sorted(s for s in range(1 << G.m) if parity_ok(G, s, odd))


def brute_L(G, e, gamma):
    """L factor straight from its definition, over all 2^m subsets."""
    odd = set(e)
    total = 0j
    for s in range(1 << G.m):
        if not parity_ok(G, s, odd):
            continue
        term = 1 + 0j
        for i in range(G.m):
            x = gamma[i] * G.phase_weights[i]
            term *= 1j * math.sin(x) if s >> i & 1 else math.cos(x)
        total += term
    return total


def brute_T(G, e, gamma, omega):
    total = 0j
    for s in range(1 << G.m):
        deg = [0] * G.n
        term = 1 + 0j
        for i, f in enumerate(G.edges):
            x = gamma[i] * G.phase_weights[i]
            if s >> i & 1:
                term *= 1j * math.sin(x)
                for v in f:
                    deg[v] ^= 1
            else:
                term *= math.cos(x)
        for v in e:
            deg[v] ^= 1
        for v in range(G.n):
            if deg[v]:
                term *= math.cos(omega[v])
        total += term
    return total
