"""Closed forms for named PM-QAOA variants and problem classes.

These are direct transcriptions of the specialized coefficient tables. They
exist as independent routes that the general engine in ``pm`` is checked
against, and as cheaper evaluators when the instance fits the special case.
"""
from __future__ import annotations

import math

from .hypergraph import NeighborhoodDecomposition, WeightedHypergraph, adjacency, neighborhoods
from .pm import Variant, a_double

# variant mixer coefficients; theta is ignored for vanilla


def variant_a_vertex(variant, P: str, beta: float, theta: float = 0.0) -> float:
    variant = Variant(variant)
    s2b, c2b = math.sin(2 * beta), math.cos(2 * beta)
    if variant is Variant.VANILLA:
        return {"X": 0.0, "Y": s2b, "Z": c2b}[P]
    if variant is Variant.WARM_START:
        sb2 = math.sin(beta) ** 2
        return {
            "X": sb2 * math.sin(2 * theta),
            "Y": -s2b * math.sin(theta),
            "Z": math.cos(beta) ** 2 + sb2 * math.cos(2 * theta),
        }[P]
    return {"X": s2b * math.sin(theta), "Y": s2b * math.cos(theta), "Z": c2b}[P]


def variant_a_pair(variant, P: str, Q: str, bu: float, bv: float, tu: float = 0.0, tv: float = 0.0) -> float:
    variant = Variant(variant)
    key = P + Q
    if key in ("YX", "ZX", "ZY"):
        return variant_a_pair(variant, Q, P, bv, bu, tv, tu)
    s2u, s2v = math.sin(2 * bu), math.sin(2 * bv)
    c2u, c2v = math.cos(2 * bu), math.cos(2 * bv)
    if variant is Variant.VANILLA:
        return {"XX": 0.0, "XY": 0.0, "XZ": 0.0, "YY": s2u * s2v, "YZ": s2u * c2v, "ZZ": c2u * c2v}[key]
    if variant is Variant.WARM_START:
        squ, sqv = math.sin(bu) ** 2, math.sin(bv) ** 2
        zu = math.cos(bu) ** 2 + squ * math.cos(2 * tu)
        zv = math.cos(bv) ** 2 + sqv * math.cos(2 * tv)
        return {
            "XX": squ * sqv * math.sin(2 * tu) * math.sin(2 * tv),
            "XY": -squ * s2v * math.sin(2 * tu) * math.sin(tv),
            "YY": s2u * s2v * math.sin(tu) * math.sin(tv),
            "XZ": squ * math.sin(2 * tu) * zv,
            "YZ": -s2u * math.sin(tu) * zv,
            "ZZ": zu * zv,
        }[key]
    return {
        "XX": s2u * s2v * math.sin(tu) * math.sin(tv),
        "XY": s2u * s2v * math.sin(tu) * math.cos(tv),
        "YY": s2u * s2v * math.cos(tu) * math.cos(tv),
        "XZ": s2u * c2v * math.sin(tu),
        "YZ": s2u * c2v * math.cos(tu),
        # the printed entry carries an extra sin^2 sin^2 cos(2t) sin^2 term
        # that the conjugation does not produce
        "ZZ": c2u * c2v,
    }[key]


# MaxCut


def _maxcut_angle(G, wp, gamma_edge, u, g):
    i = G.index((u, g))
    return wp[i] * gamma_edge[i]


def maxcut_xi_pair(P: str, Q: str, G: WeightedHypergraph, wp, gamma_edge, nb: NeighborhoodDecomposition) -> float:
    """Reduced MaxCut phase coefficients for the XX, YY, YZ and ZY channels.

    ``wp`` are the phase weights of the edges, in graph edge order.
    """
    u, v = nb.u, nb.v
    key = P + Q
    if key == "ZY":
        return maxcut_xi_pair("Y", "Z", G, wp, gamma_edge, nb.swapped())

    def ang(a, b):
        return _maxcut_angle(G, wp, gamma_edge, a, b)

    if key == "YZ":
        r = 1.0
        for g in nb.u_minus_v:
            r *= math.cos(ang(u, g))
        return -r * math.sin(ang(u, v))
    outer = 0.5
    for g in nb.u_bbslash_v:
        outer *= math.cos(ang(u, g))
    for g in nb.v_bbslash_u:
        outer *= math.cos(ang(v, g))
    rp = rm = 1.0
    for a in nb.uv:
        rp *= math.cos(ang(u, a) + ang(v, a))
        rm *= math.cos(ang(u, a) - ang(v, a))
    if key == "XX":
        return outer * (rm + rp)
    if key == "YY":
        return outer * (rm - rp)
    raise ValueError(f"channel {key} is not part of the MaxCut reduction")


def maxcut_edge_theorem(G: WeightedHypergraph, w, beta, gamma_edge, axes, u: int, v: int, adj=None) -> float:
    """Edge cut expectation w/2 [1 - aXX xiXX - aYY xiYY - aYZ xiYZ - aZY xiZY].

    ``w`` are the cut weights; the phase angles use ``G.phase_weights``.
    """
    nb = neighborhoods(G, u, v, adj)
    ru, rv = axes[u], axes[v]
    acc = 1.0
    for P, Q in (("X", "X"), ("Y", "Y"), ("Y", "Z"), ("Z", "Y")):
        acc -= a_double(P, Q, beta[u], ru, beta[v], rv) * maxcut_xi_pair(P, Q, G, G.phase_weights, gamma_edge, nb)
    return 0.5 * w[G.index((u, v))] * acc


def maxcut_total_theorem(G: WeightedHypergraph, w, beta, gamma_edge, axes) -> float:
    adj = adjacency(G)
    return sum(maxcut_edge_theorem(G, w, beta, gamma_edge, axes, u, v, adj) for u, v in G.edges)


def maxcut_fast_edge(u: int, v: int, d: int, e: int, f: int, beta_pair, gamma: float, axes) -> float:
    """Unweighted, single-angle edge expectation from the degree counts alone."""
    bu, bv = beta_pair
    ru, rv = axes[u], axes[v]
    base = math.cos(gamma) ** (d + e - 2 * f)
    tri = math.cos(2 * gamma) ** f
    sg = math.sin(gamma)
    return 0.5 * (
        1.0
        - 0.5 * a_double("X", "X", bu, ru, bv, rv) * base * (1 + tri)
        - 0.5 * a_double("Y", "Y", bu, ru, bv, rv) * base * (1 - tri)
        + a_double("Y", "Z", bu, ru, bv, rv) * sg * math.cos(gamma) ** d
        + a_double("Z", "Y", bu, ru, bv, rv) * sg * math.cos(gamma) ** e
    )


def maxcut_fast_edge_vanilla(d: int, e: int, f: int, beta: float, gamma: float) -> float:
    return 0.5 * (
        1.0
        - 0.5 * math.sin(2 * beta) ** 2 * math.cos(gamma) ** (d + e - 2 * f) * (1 - math.cos(2 * gamma) ** f)
        + 0.5 * math.sin(4 * beta) * math.sin(gamma) * (math.cos(gamma) ** d + math.cos(gamma) ** e)
    )


# MIS


def _mis_vertex_arg(u, degree, s_phase, lam1p, lam2p, gamma_vertex):
    return 2 * gamma_vertex[u] * (lam2p * degree[u] - lam1p * s_phase[u])


def mis_xi_vertex(P: str, u: int, v: int, G: WeightedHypergraph, s_phase, lam1p: float, lam2p: float,
                  gamma_vertex, gamma_edge, nb: NeighborhoodDecomposition | None = None) -> float:
    """Reduced MIS vertex coefficient relative to the incident edge (u, v)."""
    if P == "Z":
        return 0.0
    if nb is None:
        nb = neighborhoods(G, u, v)
    deg = [len(G.incident(x)) for x in range(G.n)]
    arg = _mis_vertex_arg(u, deg, s_phase, lam1p, lam2p, gamma_vertex)
    r = math.cos(2 * lam2p * gamma_edge[G.index((u, v))])
    for g in nb.u_minus_v:
        r *= math.cos(2 * lam2p * gamma_edge[G.index((u, g))])
    return (math.cos(arg) if P == "X" else math.sin(arg)) * r


def mis_xi_pair(P: str, Q: str, G: WeightedHypergraph, s_phase, lam1p: float, lam2p: float,
                gamma_vertex, gamma_edge, nb: NeighborhoodDecomposition) -> float:
    key = P + Q
    if key in ("YX", "ZX", "ZY"):
        return mis_xi_pair(Q, P, G, s_phase, lam1p, lam2p, gamma_vertex, gamma_edge, nb.swapped())
    if key == "ZZ":
        return 0.0
    u, v = nb.u, nb.v
    deg = [len(G.incident(x)) for x in range(G.n)]
    au = _mis_vertex_arg(u, deg, s_phase, lam1p, lam2p, gamma_vertex)
    av = _mis_vertex_arg(v, deg, s_phase, lam1p, lam2p, gamma_vertex)

    def g_of(a, b):
        return gamma_edge[G.index((a, b))]

    if key in ("XZ", "YZ"):
        r = 1.0
        for g in nb.u_minus_v:
            r *= math.cos(2 * lam2p * g_of(u, g))
        s = math.sin(2 * lam2p * g_of(u, v)) * r
        return math.sin(au) * s if key == "XZ" else -math.cos(au) * s
    outer = 0.5
    for g in nb.u_bbslash_v:
        outer *= math.cos(2 * lam2p * g_of(u, g))
    for g in nb.v_bbslash_u:
        outer *= math.cos(2 * lam2p * g_of(v, g))
    rp = rm = 1.0
    for a in nb.uv:
        rp *= math.cos(2 * lam2p * (g_of(u, a) + g_of(v, a)))
        rm *= math.cos(2 * lam2p * (g_of(u, a) - g_of(v, a)))
    cu, su, cv, sv = math.cos(au), math.sin(au), math.cos(av), math.sin(av)
    if key == "XX":
        return outer * (cu * cv * (rm + rp) + su * sv * (rm - rp))
    if key == "XY":
        return outer * (cu * sv * (rm + rp) - su * cv * (rm - rp))
    if key == "YY":
        return outer * (cu * cv * (rm - rp) + su * sv * (rm + rp))
    raise ValueError(f"unknown Pauli pair {key!r}")


def mis_xi_vertex_uniform(P: str, degree_u: int, lam1p: float, lam2p: float, gamma: float) -> float:
    """Unit vertex weights and a single angle; depends only on deg(u)."""
    if P == "Z":
        return 0.0
    arg = 2 * gamma * (lam2p * degree_u - lam1p)
    return (math.cos(arg) if P == "X" else math.sin(arg)) * math.cos(2 * lam2p * gamma) ** degree_u


def mis_xi_pair_uniform(P: str, Q: str, degree_u: int, degree_v: int, f: int,
                        lam1p: float, lam2p: float, gamma: float) -> float:
    key = P + Q
    if key in ("YX", "ZX", "ZY"):
        return mis_xi_pair_uniform(Q, P, degree_v, degree_u, f, lam1p, lam2p, gamma)
    if key == "ZZ":
        return 0.0
    d, e = degree_u - 1, degree_v - 1
    au = 2 * gamma * (lam2p * degree_u - lam1p)
    av = 2 * gamma * (lam2p * degree_v - lam1p)
    c = math.cos(2 * lam2p * gamma)
    if key in ("XZ", "YZ"):
        s = math.sin(2 * lam2p * gamma) * c**d
        return math.sin(au) * s if key == "XZ" else -math.cos(au) * s
    outer = 0.5 * c ** (d + e - 2 * f)
    tri = math.cos(4 * lam2p * gamma) ** f
    cu, su, cv, sv = math.cos(au), math.sin(au), math.cos(av), math.sin(av)
    if key == "XX":
        return outer * (cu * cv * (1 + tri) + su * sv * (1 - tri))
    if key == "XY":
        return outer * (cu * sv * (1 + tri) - su * cv * (1 - tri))
    if key == "YY":
        return outer * (cu * cv * (1 - tri) + su * sv * (1 + tri))
    raise ValueError(f"unknown Pauli pair {key!r}")
