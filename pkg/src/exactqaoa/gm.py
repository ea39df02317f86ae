"""Grover-mixer QAOA expectations on weighted hypergraphs.

Two initial-state modes are supported:

* ``"s"`` (structural factor L): the uniform superposition, with sums
  restricted to even-regular subhypergraph families built over GF(2).
* ``"omega"`` (structural factor T): an arbitrary product state, with sums
  over every subhypergraph.

A p-layer expectation is a sum over pairs of trajectory bit strings (f, g).
Bit strings are tuples of 0/1 with the first layer first; comparing them
lexicographically is the same as comparing the integers they spell.
"""
from __future__ import annotations

import cmath
import math
from collections import defaultdict
from typing import Sequence

import numpy as np

from .errors import EdgeNotInHypergraph, FamilyTooLarge, ImaginaryResidue, NonUnitWeights
from .hypergraph import (
    DEFAULT_DIMENSION_CAP,
    Edge,
    SubhypergraphFamily,
    WeightedHypergraph,
    coset_family,
    even_subhypergraph_basis,
    make_edge,
)
from .params import GmParams, ProductStateParams

DEFAULT_T_EDGE_CAP = 26
IMAG_TOLERANCE = 1e-10
_KEY_DECIMALS = 15


def normalize_mode(mode: str) -> str:
    m = str(mode).lower()
    if m in ("s", "l"):
        return "s"
    if m in ("omega", "t"):
        return "omega"
    raise ValueError(f"unknown mode {mode!r}; expected 's' or 'omega'")


class GmContext:
    """Per-hypergraph caches: subhypergraph families, member tables, factor memo."""

    def __init__(self, G: WeightedHypergraph, state: ProductStateParams | None = None,
                 dimension_cap: int | None = DEFAULT_DIMENSION_CAP,
                 t_edge_cap: int | None = DEFAULT_T_EDGE_CAP):
        self.G = G
        self.state = state
        self.dimension_cap = dimension_cap
        self.t_edge_cap = t_edge_cap
        self._base: SubhypergraphFamily | None = None
        self._bits: dict[Edge, np.ndarray] = {}
        self._memo: dict = {}
        self._vmask = G.vertex_masks()
        last = {}
        for j, e in enumerate(G.edges):
            for u in e:
                last[u] = j
        self._closing = defaultdict(list)
        for u, j in last.items():
            self._closing[j].append(u)
        self._isolated = [u for u in range(G.n) if u not in last]

    @property
    def base_family(self) -> SubhypergraphFamily:
        if self._base is None:
            self._base = even_subhypergraph_basis(self.G)
        return self._base

    def _edge_key(self, e) -> Edge:
        key = make_edge(e)
        if key and not self.G.has_edge(key):
            raise EdgeNotInHypergraph(f"edge {key} is not in the hypergraph")
        return key

    def member_bits(self, e) -> np.ndarray:
        key = self._edge_key(e)
        if key not in self._bits:
            fam = coset_family(self.base_family, key, self.G)
            self._bits[key] = fam.member_bits(self.dimension_cap)
        return self._bits[key]

    def factor_L(self, e, gamma) -> complex:
        bits = self.member_bits(e)
        t = np.asarray(gamma, dtype=float) * np.asarray(self.G.phase_weights)
        terms = np.where(bits, 1j * np.sin(t), np.cos(t))
        return complex(terms.prod(axis=1).sum())

    def factor_T(self, e, gamma) -> complex:
        if self.state is None:
            raise ValueError("omega mode needs a product state")
        G = self.G
        if self.t_edge_cap is not None and G.m > self.t_edge_cap:
            raise FamilyTooLarge(G.m, self.t_edge_cap)
        key = self._edge_key(e)
        in_e = 0
        for u in key:
            in_e |= 1 << u
        cosw = self.state.cos_omega()
        t = np.asarray(gamma, dtype=float) * np.asarray(G.phase_weights)
        lead = 1.0 + 0j
        for u in self._isolated:
            if in_e >> u & 1:
                lead *= cosw[u]
        # frontier elimination: sum over all edge subsets, tracking only the
        # parity of vertices that still have undecided incident edges
        states = {0: lead}
        for j in range(G.m):
            c, s = math.cos(t[j]), 1j * math.sin(t[j])
            vm = self._vmask[j]
            nxt = defaultdict(complex)
            for mask, amp in states.items():
                nxt[mask] += amp * c
                nxt[mask ^ vm] += amp * s
            for u in self._closing.get(j, ()):
                bit = 1 << u
                closed = defaultdict(complex)
                for mask, amp in nxt.items():
                    odd = (mask >> u & 1) ^ (in_e >> u & 1)
                    closed[mask & ~bit] += amp * cosw[u] if odd else amp
                nxt = closed
            states = {k: v for k, v in nxt.items() if v != 0}
            if not states:
                return 0j
        return complex(states.get(0, 0j))

    def factor(self, mode: str, e, gamma) -> complex:
        gamma = np.asarray(gamma, dtype=float)
        key = (mode, make_edge(e), tuple(np.round(gamma, _KEY_DECIMALS)))
        hit = self._memo.get(key)
        if hit is None:
            hit = self.factor_L(e, gamma) if mode == "s" else self.factor_T(e, gamma)
            self._memo[key] = hit
        return hit

    def super(self, mode: str, gamma, skip_empty: bool = False) -> complex:
        total = 0j
        for e, w in zip(self.G.edges, self.G.weights):
            if skip_empty and not e:
                continue
            total += w * self.factor(mode, e, gamma)
        return total


def _context(G, state, ctx, mode) -> GmContext:
    if ctx is not None:
        return ctx
    return GmContext(G, state if mode == "omega" else None)


def _as_gamma(G: WeightedHypergraph, gamma) -> np.ndarray:
    g = np.asarray(gamma, dtype=float).reshape(-1)
    if g.shape[0] != G.m:
        raise ValueError(f"expected {G.m} phase angles, got {g.shape[0]}")
    return g


def structural_factor_L(G: WeightedHypergraph, e, gamma, family: SubhypergraphFamily | None = None,
                        cap: int | None = DEFAULT_DIMENSION_CAP) -> complex:
    """Sum over the coset family of e of prod_{f in H} i sin(.) prod_{f not in H} cos(.)."""
    gamma = _as_gamma(G, gamma)
    ctx = GmContext(G, dimension_cap=cap)
    if family is not None:
        ctx._base = family
    return ctx.factor_L(e, gamma)


def structural_factor_T(G: WeightedHypergraph, e, gamma, state: ProductStateParams,
                        cap: int | None = DEFAULT_T_EDGE_CAP) -> complex:
    gamma = _as_gamma(G, gamma)
    return GmContext(G, state, t_edge_cap=cap).factor_T(e, gamma)


def super_factor(G: WeightedHypergraph, gamma, mode: str, state: ProductStateParams | None = None,
                 ctx: GmContext | None = None) -> complex:
    mode = normalize_mode(mode)
    gamma = _as_gamma(G, gamma)
    return _context(G, state, ctx, mode).super(mode, gamma)


def unweighted_fast_super_L(G: WeightedHypergraph, gamma: float, counts: dict[int, int]) -> complex:
    """Super factor of a unit-weight hypergraph from even-subhypergraph counts by size."""
    if any(w != 1.0 for w in G.weights) or any(w != 1.0 for w in G.phase_weights):
        raise NonUnitWeights("the fast path needs every cost and phase weight equal to 1")
    m = G.m
    isin, cos = 1j * math.sin(gamma), math.cos(gamma)
    total = 0j
    for k, count in counts.items():
        if k > 0:
            total += count * k * isin ** (k - 1) * cos ** (m - k + 1)
        if k < m:
            total += count * (m - k) * isin ** (k + 1) * cos ** (m - k - 1)
    return total


def forest_factor_L(G: WeightedHypergraph, e, gamma) -> complex:
    """Closed form of L^e when the only even subhypergraph is the empty one.

    Then the coset of e holds the single member {e}, so the sum collapses to
    i sin on e times cos on every other edge.
    """
    gamma = _as_gamma(G, gamma)
    if even_subhypergraph_basis(G).dimension != 0:
        raise ValueError("the forest closed form needs a cycle-free hypergraph")
    key = make_edge(e)
    if key and not G.has_edge(key):
        raise EdgeNotInHypergraph(f"edge {key} is not in the hypergraph")
    j = G.index(key) if key else -1
    out = 1.0 + 0j
    for i, (g, wp) in enumerate(zip(gamma, G.phase_weights)):
        out *= 1j * math.sin(g * wp) if i == j else math.cos(g * wp)
    return out


def trajectory_indices(f: Sequence[int]) -> tuple[int, ...]:
    return tuple(i + 1 for i, bit in enumerate(f) if bit)


def gamma_blocks(f: Sequence[int], params: GmParams) -> list[np.ndarray]:
    """Phase angles summed over the layer intervals that f's set bits close."""
    if len(f) != params.p:
        raise ValueError(f"bit string length {len(f)} does not match p={params.p}")
    blocks = []
    start = 0
    for idx in trajectory_indices(f):
        blocks.append(params.gamma[start:idx].sum(axis=0))
        start = idx
    blocks.append(params.gamma[start:].sum(axis=0) if start < params.p else np.zeros(params.m))
    return blocks


def bits_of(x: int, p: int) -> tuple[int, ...]:
    return tuple((x >> (p - 1 - i)) & 1 for i in range(p))


def trailing_zeros(f: Sequence[int]) -> int:
    n = 0
    for bit in reversed(f):
        if bit:
            break
        n += 1
    return n


class _Trajectories:
    """Prefactors R_f and final blocks for every bit string of one parameter set."""

    def __init__(self, ctx: GmContext, params: GmParams, mode: str):
        self.p = params.p
        self.mode = mode
        self.R = []
        self.last = []
        phases = [cmath.exp(1j * b) - 1.0 for b in params.beta]
        for x in range(1 << self.p):
            f = bits_of(x, self.p)
            blocks = gamma_blocks(f, params)
            r = 1.0 + 0j
            for bit, ph in zip(f, phases):
                if bit:
                    r *= ph
            for blk in blocks[:-1]:
                r *= ctx.factor(mode, (), blk)
            self.R.append(r)
            self.last.append(blocks[-1])
        self.tz = [trailing_zeros(bits_of(x, self.p)) for x in range(1 << self.p)]


def trajectory_contribution(key, e, G: WeightedHypergraph, params: GmParams, mode: str,
                            state: ProductStateParams | None = None, ctx: GmContext | None = None) -> complex:
    """Q^(e)_{fg} = R_f conj(R_g) Phi^e(Gamma(f)_last - Gamma(g)_last)."""
    mode = normalize_mode(mode)
    ctx = _context(G, state, ctx, mode)
    f, g = key
    phases = [cmath.exp(1j * b) - 1.0 for b in params.beta]

    def prefactor(bits):
        blocks = gamma_blocks(bits, params)
        r = 1.0 + 0j
        for bit, ph in zip(bits, phases):
            if bit:
                r *= ph
        for blk in blocks[:-1]:
            r *= ctx.factor(mode, (), blk)
        return r, blocks[-1]

    rf, lf = prefactor(f)
    rg, lg = prefactor(g)
    return rf * rg.conjugate() * ctx.factor(mode, e, lf - lg)


def _final(diag: complex, off: complex) -> float:
    if abs(diag.imag) > IMAG_TOLERANCE:
        raise ImaginaryResidue(f"diagonal sum has imaginary part {diag.imag:.3e}")
    return float(diag.real + 2.0 * off.real)


def _halved_sum(tr: _Trajectories, phi, skip_equal_tz: bool) -> float:
    n = 1 << tr.p
    diag = 0j
    off = 0j
    for x in range(n):
        if not skip_equal_tz:
            diag += tr.R[x] * tr.R[x].conjugate() * phi(tr.last[x] - tr.last[x])
        for y in range(x):
            if skip_equal_tz and tr.tz[x] == tr.tz[y]:
                continue
            off += tr.R[x] * tr.R[y].conjugate() * phi(tr.last[x] - tr.last[y])
    return _final(diag, off)


def expectation_edge_p(e, G: WeightedHypergraph, params: GmParams, mode: str,
                       state: ProductStateParams | None = None, shortcut: bool = True,
                       ctx: GmContext | None = None) -> float:
    """<Z_e> after p layers; multiply by w_e for the cost contribution."""
    mode = normalize_mode(mode)
    ctx = _context(G, state, ctx, mode)
    key = ctx._edge_key(e)
    if not key:
        return 1.0  # the empty edge is the identity observable
    tr = _Trajectories(ctx, params, mode)
    skip = shortcut and mode == "s"
    return _halved_sum(tr, lambda ang: ctx.factor(mode, key, ang), skip)


def expectation_terms_p(G: WeightedHypergraph, params: GmParams, mode: str,
                        state: ProductStateParams | None = None, shortcut: bool = True,
                        ctx: GmContext | None = None) -> np.ndarray:
    mode = normalize_mode(mode)
    ctx = _context(G, state, ctx, mode)
    tr = _Trajectories(ctx, params, mode)
    out = []
    for e in G.edges:
        if not e:
            out.append(1.0)
            continue
        skip = shortcut and mode == "s"
        out.append(_halved_sum(tr, lambda ang, e=e: ctx.factor(mode, e, ang), skip))
    return np.array(out)


def expectation_total_p(G: WeightedHypergraph, params: GmParams, mode: str,
                        state: ProductStateParams | None = None, shortcut: bool = True,
                        ctx: GmContext | None = None) -> float:
    """Cost expectation through the cost-weighted super factor.

    Empty edges are observables equal to the identity, so their weight is
    added directly and the trajectory sum runs over the remaining edges. In
    s mode that remainder vanishes at zero angle, which licenses skipping
    pairs with equal trailing-zero counts.
    """
    mode = normalize_mode(mode)
    ctx = _context(G, state, ctx, mode)
    constant = sum(w for e, w in zip(G.edges, G.weights) if not e)
    tr = _Trajectories(ctx, params, mode)
    skip = shortcut and mode == "s"
    return constant + _halved_sum(tr, lambda ang: ctx.super(mode, ang, skip_empty=True), skip)


def trajectory_matrix(e, G: WeightedHypergraph, params: GmParams, mode: str,
                      state: ProductStateParams | None = None, ctx: GmContext | None = None) -> np.ndarray:
    """Full 2^p x 2^p matrix of Q^(e)_{fg}; ``e=None`` gives the cost-weighted sum."""
    mode = normalize_mode(mode)
    ctx = _context(G, state, ctx, mode)
    tr = _Trajectories(ctx, params, mode)
    if e is None:
        phi = lambda ang: ctx.super(mode, ang)  # noqa: E731
    else:
        key = ctx._edge_key(e)
        phi = lambda ang: ctx.factor(mode, key, ang)  # noqa: E731
    n = 1 << tr.p
    Q = np.empty((n, n), dtype=complex)
    for x in range(n):
        for y in range(n):
            Q[x, y] = tr.R[x] * tr.R[y].conjugate() * phi(tr.last[x] - tr.last[y])
    return Q


# single layer closed forms


def single_layer_edge(e, G: WeightedHypergraph, gamma, beta: float, mode: str,
                      state: ProductStateParams | None = None, ctx: GmContext | None = None) -> float:
    """Edge cost <C_e> = w_e <Z_e> for one layer."""
    mode = normalize_mode(mode)
    gamma = _as_gamma(G, gamma)
    ctx = _context(G, state, ctx, mode)
    key = ctx._edge_key(e)
    w = G.weights[G.index(key)] if G.has_edge(key) else 0.0
    ph = cmath.exp(1j * beta) - 1.0
    root = ctx.factor(mode, (), gamma)
    if mode == "s":
        if not key:
            return float(w)
        val = 2.0 * (ph * root * ctx.factor(mode, key, -gamma)).real
    else:
        at_zero = ctx.factor(mode, key, np.zeros(G.m))
        body = (1.0 + 2.0 * (1.0 - math.cos(beta)) * abs(root) ** 2) * at_zero
        if abs(body.imag) > IMAG_TOLERANCE:
            raise ImaginaryResidue(f"zero-angle factor has imaginary part {body.imag:.3e}")
        val = body.real + 2.0 * (ph * root * ctx.factor(mode, key, -gamma)).real
    return float(w * val)


def single_layer_total(G: WeightedHypergraph, gamma, beta: float, mode: str,
                       state: ProductStateParams | None = None, ctx: GmContext | None = None) -> float:
    mode = normalize_mode(mode)
    gamma = _as_gamma(G, gamma)
    ctx = _context(G, state, ctx, mode)
    ph = cmath.exp(1j * beta) - 1.0
    root = ctx.factor(mode, (), gamma)
    grow = 1.0 + 2.0 * (1.0 - math.cos(beta)) * abs(root) ** 2
    if mode == "s":
        lead = grow * sum(w for e, w in zip(G.edges, G.weights) if not e)
    else:
        lead = grow * ctx.super(mode, np.zeros(G.m))
        if abs(lead.imag) > IMAG_TOLERANCE:
            raise ImaginaryResidue(f"zero-angle super factor has imaginary part {lead.imag:.3e}")
        lead = lead.real
    return float(lead + 2.0 * (ph * root * ctx.super(mode, -gamma)).real)


def maxcut_gm_encode(G_maxcut: WeightedHypergraph) -> WeightedHypergraph:
    """Hypergraph with an empty edge of weight W/2 and every edge at -w/2."""
    items = [((), 0.5 * sum(G_maxcut.weights), 0.5 * sum(G_maxcut.phase_weights))]
    for e, w, wp in zip(G_maxcut.edges, G_maxcut.weights, G_maxcut.phase_weights):
        items.append((e, -0.5 * w, -0.5 * wp))
    return WeightedHypergraph.from_edges(G_maxcut.n, items)
