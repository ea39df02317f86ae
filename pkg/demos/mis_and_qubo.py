"""Penalty MIS and a QUBO, both turned into Ising weights.

Each builder is checked bit string by bit string against its classical
objective, and the one-layer product-mixer expectation is compared with a
statevector run under a warm-start mixer.

    python3 demos/mis_and_qubo.py
"""
import numpy as np

from exactqaoa import oracle, pm
from exactqaoa.hypergraph import WeightedHypergraph
from exactqaoa.params import PmParams
from exactqaoa.problems import (
    MisInstance,
    ising_diagonal,
    mis_to_ising,
    mis_value,
    qubo_to_ising,
    qubo_value,
)

G = WeightedHypergraph.graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
mis = MisInstance(G, s=[1.0, 0.8, 1.2, 1.0, 0.9], lam1=1.0, lam2=1.5)
ising = mis_to_ising(mis)
diag = ising_diagonal(ising)
gap = max(abs(diag[x] - mis_value(mis, x)) for x in range(1 << 5))
best = max(range(1 << 5), key=lambda x: mis_value(mis, x))
print(f"MIS: diagonal vs objective max gap {gap:.1e}; best set {[u for u in range(5) if best >> u & 1]}")

theta = np.where([(best >> u) & 1 for u in range(5)], 2.6, 0.5)
axes = pm.variant_axes("warmstart", theta)
params = PmParams.uniform(5, G.m, 0.3, 0.2)
print(f"MIS warm-start expectation {pm.expectation_total(ising.weights, params, axes, G):.12f} "
      f"vs statevector {oracle.run_pm(G, ising.weights, params, axes).total:.12f}")

Q = np.array([[-1.0, 2.0, 0.0, 0.5], [0.0, -2.0, 1.0, 0.0], [0.0, 0.0, 0.5, -1.5], [0.0, 0.0, 0.0, 1.0]])
qubo = qubo_to_ising(Q, linear=[0.2, 0.0, -0.3, 0.1], offset=1.0)
diag = ising_diagonal(qubo)
gap = max(abs(diag[x] - qubo_value(Q, [0.2, 0.0, -0.3, 0.1], 1.0, x)) for x in range(16))
print(f"QUBO: {qubo.graph.m} couplings, diagonal vs objective max gap {gap:.1e}")
