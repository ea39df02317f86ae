"""Builders that turn MaxCut, MIS and QUBO instances into Ising weights.

Every builder returns an :class:`IsingProblem`, the simple graph that carries
the two-body terms together with the (a, h, J) / (a', h', J') weights keyed
by that graph's edge order. Bits map to spins through x = (1 - Z) / 2.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import SchemaError
from .hypergraph import WeightedHypergraph, require_simple_graph
from .params import IsingWeights


@dataclass(frozen=True)
class IsingProblem:
    graph: WeightedHypergraph
    weights: IsingWeights

    @property
    def n(self) -> int:
        return self.graph.n


@dataclass(frozen=True)
class MaxCutInstance:
    """Simple graph whose cost weights are the cut weights.

    The graph's phase weights feed the phase Hamiltonian.
    """

    graph: WeightedHypergraph

    def __post_init__(self):
        require_simple_graph(self.graph)

    @classmethod
    def unweighted(cls, n: int, pairs) -> "MaxCutInstance":
        return cls(WeightedHypergraph.graph(n, pairs))


@dataclass(frozen=True)
class MisInstance:
    graph: WeightedHypergraph
    s: np.ndarray
    lam1: float
    lam2: float
    s_phase: np.ndarray | None = None
    lam1_phase: float | None = None
    lam2_phase: float | None = None

    def __post_init__(self):
        require_simple_graph(self.graph)
        n = self.graph.n
        s = np.asarray(self.s, dtype=float).reshape(-1)
        sp = s if self.s_phase is None else np.asarray(self.s_phase, dtype=float).reshape(-1)
        if s.shape[0] != n or sp.shape[0] != n:
            raise SchemaError(f"vertex weights must have length {n}")
        l1p = self.lam1 if self.lam1_phase is None else self.lam1_phase
        l2p = self.lam2 if self.lam2_phase is None else self.lam2_phase
        values = [self.lam1, self.lam2, l1p, l2p]
        if not (np.all(np.isfinite(s)) and np.all(np.isfinite(sp)) and np.all(np.isfinite(values))):
            raise SchemaError("MIS weights must be finite")
        if self.lam2 <= 0 or l2p <= 0:
            raise SchemaError("the independence penalty lam2 must be positive")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "s_phase", sp)
        object.__setattr__(self, "lam1", float(self.lam1))
        object.__setattr__(self, "lam2", float(self.lam2))
        object.__setattr__(self, "lam1_phase", float(l1p))
        object.__setattr__(self, "lam2_phase", float(l2p))

    def degrees(self) -> np.ndarray:
        return np.array([len(self.graph.incident(u)) for u in range(self.graph.n)], dtype=float)


def maxcut_to_ising(inst: MaxCutInstance) -> IsingProblem:
    G = inst.graph
    w = np.asarray(G.weights, dtype=float)
    wp = np.asarray(G.phase_weights, dtype=float)
    weights = IsingWeights(
        a=0.5 * w.sum(), h=np.zeros(G.n), J=-0.5 * w,
        a_phase=0.5 * wp.sum(), h_phase=np.zeros(G.n), J_phase=-0.5 * wp,
    )
    return IsingProblem(G, weights)


def _mis_weights(G, s, lam1, lam2, degree):
    a = lam1 * float(np.sum(s)) - lam2 * G.m
    return a, lam2 * degree - lam1 * s, np.full(G.m, -lam2)


def mis_to_ising(inst: MisInstance) -> IsingProblem:
    G = inst.graph
    D = inst.degrees()
    a, h, J = _mis_weights(G, inst.s, inst.lam1, inst.lam2, D)
    ap, hp, Jp = _mis_weights(G, inst.s_phase, inst.lam1_phase, inst.lam2_phase, D)
    return IsingProblem(G, IsingWeights(a, h, J, ap, hp, Jp))


def qubo_to_ising(Q, linear=None, offset: float = 0.0) -> IsingProblem:
    """Ising form of  offset + sum_i linear_i x_i + sum_{i<=j} Q_ij x_i x_j.

    Entries below the diagonal are folded onto their mirror, and diagonal
    entries act as linear terms since x^2 = x. Only pairs with a nonzero
    coupling become edges.
    """
    Q = np.asarray(Q, dtype=float)
    if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
        raise SchemaError(f"QUBO matrix must be square, got shape {Q.shape}")
    n = Q.shape[0]
    if n == 0:
        raise SchemaError("QUBO needs at least one variable")
    c = np.zeros(n) if linear is None else np.asarray(linear, dtype=float).reshape(-1)
    if c.shape[0] != n:
        raise SchemaError(f"linear term has length {c.shape[0]}, expected {n}")
    if not (np.all(np.isfinite(Q)) and np.all(np.isfinite(c)) and np.isfinite(offset)):
        raise SchemaError("QUBO entries must be finite")
    c = c + np.diag(Q)
    a = float(offset) + 0.5 * c.sum()
    h = -0.5 * c
    pairs, J = [], []
    for i, j in itertools.combinations(range(n), 2):
        q = Q[i, j] + Q[j, i]
        if q == 0.0:
            continue
        a += 0.25 * q
        h[i] -= 0.25 * q
        h[j] -= 0.25 * q
        pairs.append((i, j))
        J.append(0.25 * q)
    G = WeightedHypergraph.graph(n, pairs, J)
    return IsingProblem(G, IsingWeights.same(a, h, np.array(J)))


def ising_to_hypergraph(problem: IsingProblem) -> WeightedHypergraph:
    """Hypergraph form for the Grover-mixer engine.

    Edges come in the order: empty edge, singletons, then pairs. An empty
    edge or singleton is kept only when its cost or phase weight is nonzero,
    so MaxCut maps to the empty edge plus its pairs.
    """
    G, w = problem.graph, problem.weights
    items = []
    if w.a != 0.0 or w.a_phase != 0.0:
        items.append(((), w.a, w.a_phase))
    for u in range(G.n):
        if w.h[u] != 0.0 or w.h_phase[u] != 0.0:
            items.append(((u,), w.h[u], w.h_phase[u]))
    for e, J, Jp in zip(G.edges, w.J, w.J_phase):
        items.append((e, J, Jp))
    return WeightedHypergraph.from_edges(G.n, items)


# classical costs on bit strings; bit u of x is vertex u


def _bits(x: int, n: int) -> np.ndarray:
    return (x >> np.arange(n)) & 1


def ising_value(problem: IsingProblem, x: int) -> float:
    G, w = problem.graph, problem.weights
    z = 1 - 2 * _bits(x, G.n)
    total = w.a + float(np.dot(w.h, z))
    for (u, v), J in zip(G.edges, w.J):
        total += J * z[u] * z[v]
    return float(total)


def maxcut_value(inst: MaxCutInstance, x: int) -> float:
    b = _bits(x, inst.graph.n)
    return float(sum(w for (u, v), w in zip(inst.graph.edges, inst.graph.weights) if b[u] != b[v]))


def mis_value(inst: MisInstance, x: int) -> float:
    """Penalized MIS objective with the 1/2 prefactors folded into the penalties."""
    b = _bits(x, inst.graph.n)
    pen = sum(b[u] * b[v] for u, v in inst.graph.edges)
    return float(2 * inst.lam1 * np.dot(inst.s, b) - 4 * inst.lam2 * pen)


def qubo_value(Q, linear, offset: float, x: int) -> float:
    Q = np.asarray(Q, dtype=float)
    b = _bits(x, Q.shape[0]).astype(float)
    c = np.zeros(Q.shape[0]) if linear is None else np.asarray(linear, dtype=float)
    return float(offset + c @ b + b @ np.triu(Q) @ b + b @ np.tril(Q, -1) @ b)


def ising_diagonal(problem: IsingProblem) -> np.ndarray:
    """Diagonal of the cost Hamiltonian over all 2^n basis states (little-endian)."""
    from .oracle import z_signs

    G, w = problem.graph, problem.weights
    diag = np.full(1 << G.n, w.a)
    for u in range(G.n):
        diag += w.h[u] * z_signs(G.n, (u,))
    for e, J in zip(G.edges, w.J):
        diag += J * z_signs(G.n, e)
    return diag
