"""Single-layer product-mixer QAOA expectations from |s>.

The cost expectation splits into mixer-side coefficients ``a`` (functions of
the mixer angles and axes only) and phase-side coefficients ``xi`` (functions
of the phase angles and the graph neighborhood only)::

    <C> = a + sum_u h_u F_u + sum_uv J_uv F_uv
    F_u = sum_P a^P_u xi^P_u,   F_uv = sum_PQ a^PQ_uv xi^PQ_uv

Phase-side trigonometric arguments are ``2 h'_u gamma_u`` for vertices and
``2 J'_uv gamma_uv`` for edges.
"""
from __future__ import annotations

import math
from enum import Enum

import numpy as np

from .errors import NotAnEdge
from .hypergraph import NeighborhoodDecomposition, WeightedHypergraph, adjacency, neighborhoods
from .params import IsingWeights, MixerAxes, PmParams

PAULIS = ("X", "Y", "Z")


class Variant(str, Enum):
    VANILLA = "vanilla"
    WARM_START = "warmstart"
    FREE_AXIS = "freeaxis"


def variant_axes(variant, theta=None, n: int | None = None) -> MixerAxes:
    variant = Variant(variant)
    if variant is Variant.VANILLA:
        if n is None:
            n = len(theta)
        return MixerAxes(np.tile([1.0, 0.0, 0.0], (n, 1)))
    t = np.asarray(theta, dtype=float)
    if variant is Variant.WARM_START:
        r = np.stack([-np.sin(t), np.zeros_like(t), -np.cos(t)], axis=1)
    else:
        r = np.stack([np.cos(t), -np.sin(t), np.zeros_like(t)], axis=1)
    return MixerAxes(r)


# mixer side

def _theta(p: str, q: str, sign: int, beta: float, r) -> float:
    comp = dict(zip(PAULIS, r))
    return math.cos(beta) * comp[p] + sign * math.sin(beta) * comp[q] * comp["Z"]


def _phi(p: str, q: str, sign: int, beta: float, r) -> float:
    comp = dict(zip(PAULIS, r))
    return 2 * math.sin(beta) ** 2 * comp[p] * comp["Z"] + sign * math.sin(2 * beta) * comp[q]


def _z_weight(beta: float, rz: float) -> float:
    return math.cos(beta) ** 2 - math.sin(beta) ** 2 * (1 - 2 * rz * rz)


def a_single(P: str, beta: float, r) -> float:
    if P == "X":
        return _phi("X", "Y", -1, beta, r)
    if P == "Y":
        return _phi("Y", "X", +1, beta, r)
    if P == "Z":
        return _z_weight(beta, r[2])
    raise ValueError(f"unknown Pauli label {P!r}")


def a_double(P: str, Q: str, bu: float, ru, bv: float, rv) -> float:
    su, sv = math.sin(bu), math.sin(bv)
    key = P + Q
    # per-vertex factors are grouped first so that swapping u and v is exact
    if key == "XX":
        return 4 * ((su * _theta("Y", "X", -1, bu, ru)) * (sv * _theta("Y", "X", -1, bv, rv)))
    if key == "XY":
        return -4 * ((su * _theta("Y", "X", -1, bu, ru)) * (sv * _theta("X", "Y", +1, bv, rv)))
    if key == "YY":
        return 4 * ((su * _theta("X", "Y", +1, bu, ru)) * (sv * _theta("X", "Y", +1, bv, rv)))
    if key == "XZ":
        rxu, ryu, rzu = ru
        rzv = rv[2]
        return (
            2 * su**2 * rxu * rzu * (math.cos(2 * bv) + 2 * sv**2 * rzv**2)
            + math.sin(2 * bu) * ryu * (sv**2 * (1 - 2 * rzv**2) - math.cos(bv) ** 2)
        )
    if key == "YZ":
        return 2 * su * _theta("X", "Y", +1, bu, ru) * _z_weight(bv, rv[2])
    if key == "ZZ":
        # the printed table entry is not the conjugation coefficient; the
        # product of the single-vertex Z weights is
        return _z_weight(bu, ru[2]) * _z_weight(bv, rv[2])
    if key in ("YX", "ZX", "ZY"):
        return a_double(Q, P, bv, rv, bu, ru)
    raise ValueError(f"unknown Pauli pair {key!r}")


def a_coeff_vertex(P: str, u: int, params: PmParams, axes: MixerAxes) -> float:
    return a_single(P, params.beta[u], axes[u])


def a_coeff_pair(P: str, Q: str, u: int, v: int, params: PmParams, axes: MixerAxes) -> float:
    if u == v:
        raise ValueError("a_coeff_pair needs two distinct vertices")
    return a_double(P, Q, params.beta[u], axes[u], params.beta[v], axes[v])


# phase side

class _PhaseAngles:
    """Per-vertex and per-edge phase arguments for one (G, weights, params)."""

    def __init__(self, G: WeightedHypergraph, weights: IsingWeights, params: PmParams):
        self.G = G
        self.vertex = 2.0 * np.asarray(weights.h_phase) * np.asarray(params.gamma_vertex)
        self.edge = 2.0 * np.asarray(weights.J_phase) * np.asarray(params.gamma_edge)
        self.idx = {e: i for i, e in enumerate(G.edges)}

    def on(self, u: int, g: int) -> float:
        return self.edge[self.idx[(u, g) if u < g else (g, u)]]

    def r_product(self, u: int, others) -> float:
        out = 1.0
        for g in others:
            out *= math.cos(self.on(u, g))
        return out

    def r_pm(self, u: int, v: int, common, sign: int) -> float:
        out = 1.0
        for a in common:
            out *= math.cos(self.on(u, a) + sign * self.on(v, a))
        return out


def _xi_vertex(P: str, u: int, v: int, ang: _PhaseAngles, nb: NeighborhoodDecomposition) -> float:
    if P == "Z":
        return 0.0
    tail = math.cos(ang.on(u, v)) * ang.r_product(u, nb.u_minus_v)
    if P == "X":
        return math.cos(ang.vertex[u]) * tail
    if P == "Y":
        return math.sin(ang.vertex[u]) * tail
    raise ValueError(f"unknown Pauli label {P!r}")


def _xi_pair(P: str, Q: str, ang: _PhaseAngles, nb: NeighborhoodDecomposition) -> float:
    u, v = nb.u, nb.v
    key = P + Q
    if key in ("YX", "ZX", "ZY"):
        return _xi_pair(Q, P, ang, nb.swapped())
    if key == "ZZ":
        return 0.0
    cu, su = math.cos(ang.vertex[u]), math.sin(ang.vertex[u])
    if key in ("XZ", "YZ"):
        tail = math.sin(ang.on(u, v)) * ang.r_product(u, nb.u_minus_v)
        return -su * tail if key == "XZ" else cu * tail
    cv, sv = math.cos(ang.vertex[v]), math.sin(ang.vertex[v])
    outer = 0.5 * (ang.r_product(u, nb.u_bbslash_v) * ang.r_product(v, nb.v_bbslash_u))
    rm = ang.r_pm(u, v, nb.uv, -1)
    rp = ang.r_pm(u, v, nb.uv, +1)
    if key == "XX":
        return outer * (cu * cv * (rm + rp) + su * sv * (rm - rp))
    if key == "XY":
        return outer * (cu * sv * (rm + rp) - su * cv * (rm - rp))
    if key == "YY":
        return outer * (cu * cv * (rm - rp) + su * sv * (rm + rp))
    raise ValueError(f"unknown Pauli pair {key!r}")


def _decomposition(G, u, v, nbhd):
    if nbhd is None:
        return neighborhoods(G, u, v)
    if {nbhd.u, nbhd.v} != {u, v}:
        raise NotAnEdge(f"neighborhood is for ({nbhd.u}, {nbhd.v}), not ({u}, {v})")
    return nbhd if nbhd.u == u else nbhd.swapped()


def xi_coeff_vertex(P: str, u: int, v_anchor: int, G: WeightedHypergraph, weights: IsingWeights,
                    params: PmParams, nbhd: NeighborhoodDecomposition | None = None) -> float:
    """Vertex phase coefficient written relative to the incident edge (u, v_anchor)."""
    nb = _decomposition(G, u, v_anchor, nbhd)
    return _xi_vertex(P, u, v_anchor, _PhaseAngles(G, weights, params), nb)


def xi_coeff_vertex_free(P: str, u: int, G: WeightedHypergraph, weights: IsingWeights,
                         params: PmParams, adj=None) -> float:
    """Anchor-free vertex coefficient: the product runs over every incident edge."""
    if adj is None:
        adj = adjacency(G)
    ang = _PhaseAngles(G, weights, params)
    return _xi_vertex_free(P, u, ang, adj)


def _xi_vertex_free(P, u, ang, adj) -> float:
    if P == "Z":
        return 0.0
    tail = ang.r_product(u, adj[u])
    return (math.cos if P == "X" else math.sin)(ang.vertex[u]) * tail


def xi_coeff_pair(P: str, Q: str, u: int, v: int, G: WeightedHypergraph, weights: IsingWeights,
                  params: PmParams, nbhd: NeighborhoodDecomposition | None = None) -> float:
    nb = _decomposition(G, u, v, nbhd)
    return _xi_pair(P, Q, _PhaseAngles(G, weights, params), nb)


# expectations

def _f_vertex(u, params, axes, ang, adj) -> float:
    b, r = params.beta[u], axes[u]
    return sum(a_single(P, b, r) * _xi_vertex_free(P, u, ang, adj) for P in ("X", "Y"))


def _f_edge(nb, params, axes, ang) -> float:
    u, v = nb.u, nb.v
    bu, ru, bv, rv = params.beta[u], axes[u], params.beta[v], axes[v]
    total = 0.0
    for P in PAULIS:
        for Q in PAULIS:
            if P == "Z" and Q == "Z":
                continue  # xi^ZZ vanishes identically
            total += a_double(P, Q, bu, ru, bv, rv) * _xi_pair(P, Q, ang, nb)
    return total


def expectation_vertex(u: int, weights: IsingWeights, params: PmParams, axes: MixerAxes,
                       G: WeightedHypergraph) -> float:
    """F_u = <Z_u>; its cost contribution is h_u F_u."""
    adj = adjacency(G)
    return _f_vertex(u, params, axes, _PhaseAngles(G, weights, params), adj)


def expectation_edge(u: int, v: int, weights: IsingWeights, params: PmParams, axes: MixerAxes,
                     G: WeightedHypergraph) -> float:
    """F_uv = <Z_u Z_v>; its cost contribution is J_uv F_uv."""
    nb = neighborhoods(G, u, v)
    return _f_edge(nb, params, axes, _PhaseAngles(G, weights, params))


def expectation_terms(weights: IsingWeights, params: PmParams, axes: MixerAxes,
                      G: WeightedHypergraph) -> tuple[np.ndarray, np.ndarray]:
    """All F_u (vertex order) and F_uv (edge order)."""
    adj = adjacency(G)
    ang = _PhaseAngles(G, weights, params)
    fu = np.array([_f_vertex(u, params, axes, ang, adj) for u in range(G.n)])
    fuv = np.array([_f_edge(neighborhoods(G, u, v, adj), params, axes, ang) for u, v in G.edges])
    return fu, fuv


def expectation_total(weights: IsingWeights, params: PmParams, axes: MixerAxes,
                      G: WeightedHypergraph) -> float:
    fu, fuv = expectation_terms(weights, params, axes, G)
    return weights.a + float(np.dot(weights.h, fu)) + float(np.dot(weights.J, fuv))
