"""Weighted hypergraphs, graph neighborhoods and GF(2) subhypergraph families.

Edges are stored in construction order and every per-edge sequence elsewhere
in the package (angles, weights, subhypergraph bit masks) uses that order.
Subhypergraphs are encoded as Python ints: bit ``i`` set means edge ``i`` is
present.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DuplicateEdge,
    EdgeNotInHypergraph,
    FamilyTooLarge,
    InvalidEdge,
    NotAnEdge,
    NotASimpleGraph,
)

Edge = tuple[int, ...]

DEFAULT_DIMENSION_CAP = 24


def make_edge(vertices: Iterable[int]) -> Edge:
    """Normalize a vertex collection into a sorted, duplicate-free tuple."""
    vs = [int(v) for v in vertices]
    if any(v < 0 for v in vs):
        raise InvalidEdge(f"negative vertex id in {vs}")
    out = tuple(sorted(vs))
    if len(set(out)) != len(out):
        raise InvalidEdge(f"repeated vertex in {vs}")
    return out


@dataclass(frozen=True)
class WeightedHypergraph:
    n: int
    edges: tuple[Edge, ...]
    weights: tuple[float, ...]
    phase_weights: tuple[float, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise InvalidEdge(f"vertex count must be a positive integer, got {self.n}")
        if not (len(self.edges) == len(self.weights) == len(self.phase_weights)):
            raise InvalidEdge("edges, weights and phase_weights differ in length")
        index = {}
        for i, e in enumerate(self.edges):
            if tuple(make_edge(e)) != tuple(e):
                raise InvalidEdge(f"edge {e} is not strictly increasing")
            if e and e[-1] >= self.n:
                raise InvalidEdge(f"edge {e} references a vertex >= n={self.n}")
            if e in index:
                raise DuplicateEdge(f"edge {e} appears twice")
            index[e] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_edges(cls, n: int, items: Iterable[Sequence]) -> "WeightedHypergraph":
        """Build from ``(vertices, w)`` or ``(vertices, w, w_phase)`` items."""
        edges, ws, wps = [], [], []
        for item in items:
            verts, w = item[0], float(item[1])
            wp = float(item[2]) if len(item) > 2 and item[2] is not None else w
            edges.append(make_edge(verts))
            ws.append(w)
            wps.append(wp)
        return cls(int(n), tuple(edges), tuple(ws), tuple(wps))

    @classmethod
    def graph(cls, n: int, pairs: Iterable[Sequence[int]], weights=None, phase_weights=None):
        pairs = [make_edge(p) for p in pairs]
        for p in pairs:
            if len(p) != 2:
                raise NotASimpleGraph(f"graph edge {p} does not have two vertices")
        w = [1.0] * len(pairs) if weights is None else [float(x) for x in weights]
        wp = list(w) if phase_weights is None else [float(x) for x in phase_weights]
        return cls(int(n), tuple(pairs), tuple(w), tuple(wp))

    @property
    def m(self) -> int:
        return len(self.edges)

    def index(self, e: Iterable[int]) -> int:
        key = make_edge(e)
        try:
            return self._index[key]
        except KeyError:
            raise EdgeNotInHypergraph(f"edge {key} is not in the hypergraph") from None

    def has_edge(self, e: Iterable[int]) -> bool:
        return make_edge(e) in self._index

    def vertex_masks(self) -> list[int]:
        """Per-edge bit mask over vertices."""
        return [sum(1 << v for v in e) for e in self.edges]

    def incident(self, u: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if u in e]

    def is_simple_graph(self) -> bool:
        return all(len(e) == 2 for e in self.edges)

    def total_weight(self) -> float:
        return float(sum(self.weights))

    def with_weights(self, weights=None, phase_weights=None) -> "WeightedHypergraph":
        w = self.weights if weights is None else tuple(float(x) for x in weights)
        wp = self.phase_weights if phase_weights is None else tuple(float(x) for x in phase_weights)
        return WeightedHypergraph(self.n, self.edges, w, wp)


def require_simple_graph(G: WeightedHypergraph) -> None:
    bad = [e for e in G.edges if len(e) != 2]
    if bad:
        raise NotASimpleGraph(f"edges {bad} do not have exactly two vertices")


def adjacency(G: WeightedHypergraph) -> list[set[int]]:
    require_simple_graph(G)
    adj = [set() for _ in range(G.n)]
    for u, v in G.edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


@dataclass(frozen=True)
class NeighborhoodDecomposition:
    u: int
    v: int
    u_minus_v: frozenset
    u_bbslash_v: frozenset
    uv: frozenset
    v_minus_u: frozenset
    v_bbslash_u: frozenset

    @property
    def d(self) -> int:
        return len(self.u_minus_v)

    @property
    def e(self) -> int:
        return len(self.v_minus_u)

    @property
    def f(self) -> int:
        return len(self.uv)

    def swapped(self) -> "NeighborhoodDecomposition":
        return NeighborhoodDecomposition(
            self.v, self.u, self.v_minus_u, self.v_bbslash_u, self.uv,
            self.u_minus_v, self.u_bbslash_v,
        )


def neighborhoods(G: WeightedHypergraph, u: int, v: int, adj=None) -> NeighborhoodDecomposition:
    if adj is None:
        adj = adjacency(G)
    else:
        require_simple_graph(G)
    if u == v or not G.has_edge((u, v)):
        raise NotAnEdge(f"({u}, {v}) is not an edge")
    nu, nv = adj[u], adj[v]
    common = frozenset(nu & nv)
    return NeighborhoodDecomposition(
        u=u,
        v=v,
        u_minus_v=frozenset(nu - {v}),
        u_bbslash_v=frozenset(nu - nv - {v}),
        uv=common,
        v_minus_u=frozenset(nv - {u}),
        v_bbslash_u=frozenset(nv - nu - {u}),
    )


@dataclass(frozen=True)
class SubhypergraphFamily:
    """An affine GF(2) family ``shift + span(basis)`` of edge subsets."""

    m: int
    basis: tuple[int, ...]
    shift: int = 0

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return 1 << len(self.basis)

    def check_cap(self, cap: int | None) -> None:
        if cap is not None and self.dimension > cap:
            raise FamilyTooLarge(self.dimension, cap)

    def members(self, cap: int | None = DEFAULT_DIMENSION_CAP) -> Iterator[int]:
        """Gray-code walk over every member."""
        self.check_cap(cap)
        cur = self.shift
        yield cur
        for i in range(1, self.size):
            cur ^= self.basis[(i & -i).bit_length() - 1]
            yield cur

    def member_bits(self, cap: int | None = DEFAULT_DIMENSION_CAP) -> np.ndarray:
        """Boolean array of shape (size, m); row r is the r-th member."""
        self.check_cap(cap)
        if self.m <= 63:
            masks = np.array([self.shift], dtype=np.int64)
            for b in self.basis:
                masks = np.concatenate([masks, masks ^ b])
            bits = (masks[:, None] >> np.arange(self.m)) & 1
        else:
            bits = np.array([[(h >> i) & 1 for i in range(self.m)] for h in self.members(cap=None)])
        return bits.astype(bool)


def even_subhypergraph_basis(G: WeightedHypergraph) -> SubhypergraphFamily:
    """Basis of the edge subsets covering every vertex an even number of times.

    Gaussian elimination over the incidence columns; each column that reduces
    to zero yields one nullspace vector, so the dimension is ``m - rank``.
    """
    pivots: dict[int, tuple[int, int]] = {}
    basis = []
    for j, col in enumerate(G.vertex_masks()):
        combo = 1 << j
        while col:
            top = col.bit_length() - 1
            if top not in pivots:
                pivots[top] = (col, combo)
                break
            pcol, pcombo = pivots[top]
            col ^= pcol
            combo ^= pcombo
        if not col:
            basis.append(combo)
    return SubhypergraphFamily(G.m, tuple(basis), 0)


def coset_family(base: SubhypergraphFamily, e: Iterable[int], G: WeightedHypergraph) -> SubhypergraphFamily:
    """Shift the family by toggling edge ``e``. The empty edge leaves it unchanged."""
    key = make_edge(e)
    if not key:
        return base
    bit = 1 << G.index(key)
    return SubhypergraphFamily(base.m, base.basis, base.shift ^ bit)


def count_even_by_size(G: WeightedHypergraph, cap: int | None = DEFAULT_DIMENSION_CAP) -> dict[int, int]:
    """Number of even-regular subhypergraphs with exactly k edges, nonzero k only."""
    fam = even_subhypergraph_basis(G)
    fam.check_cap(cap)
    sizes = fam.member_bits(cap=None).sum(axis=1)
    ks, counts = np.unique(sizes, return_counts=True)
    return {int(k): int(c) for k, c in zip(ks, counts)}
