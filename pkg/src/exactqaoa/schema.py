"""Strict loading of problem and parameter JSON documents.

Problem documents
-----------------
``{"type": "maxcut", "n": 3, "edges": [{"v": [0, 1], "w": 1.0, "wp": 1.0}, ...]}``
    ``w`` defaults to 1 and ``wp`` to ``w``.
``{"type": "mis", "n": 3, "edges": [{"v": [0, 1]}, ...], "s": [...], "lam1": 1, "lam2": 2}``
    optional ``s_phase``, ``lam1_phase``, ``lam2_phase`` (default to the cost values).
``{"type": "qubo", "Q": [[...]], "linear": [...], "offset": 0.0}``
    ``linear`` and ``offset`` are optional.
``{"type": "ising", "n": 2, "a": 0, "h": [...], "edges": [{"v": [0, 1], "J": 1, "Jp": 1}],
  "a_phase": 0, "h_phase": [...]}``
    phase fields default to the cost fields.
``{"type": "hypergraph", "n": 3, "edges": [{"v": [0, 1, 2], "w": 1, "wp": 1}, {"v": [], "w": 2}]}``
    Grover-mixer mode only; ``"v": []`` is the empty edge.

Parameter documents
-------------------
Product mixer (``--mode pm``)::

    {"beta": 0.3 | [per vertex],
     "gamma": 0.2 | {"vertex": 0.2 | [...], "edge": 0.2 | [...], "const": 0.0},
     "mixer": {"variant": "vanilla" | "warmstart" | "freeaxis", "theta": 0.1 | [...]}
              | {"axes": [[rx, ry, rz], ...]}}

``mixer`` defaults to vanilla. Edge lists follow the problem's edge order.

Grover mixer (``--mode gm``)::

    {"beta": 0.3 | [per layer],
     "gamma": 0.2 | [per layer: scalar | [per edge]],
     "state": {"lambda": [...], "omega": [...]}}

``state`` is required with ``--state omega``. Per-edge lists follow the
hypergraph edge order reported by ``expect``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import SchemaError
from .hypergraph import WeightedHypergraph, make_edge
from .params import GmParams, IsingWeights, MixerAxes, PmParams, ProductStateParams
from .pm import Variant, variant_axes
from .problems import (
    IsingProblem,
    MaxCutInstance,
    MisInstance,
    ising_to_hypergraph,
    maxcut_to_ising,
    mis_to_ising,
    qubo_to_ising,
)


def parse_json(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _fail(path: str, msg: str):
    raise SchemaError(f"{path}: {msg}")


def _obj(x, path):
    if not isinstance(x, dict):
        _fail(path, "expected an object")
    return x


def _check_keys(d, path, allowed):
    extra = sorted(set(d) - set(allowed))
    if extra:
        _fail(path, f"unknown field(s) {extra}")


def _num(x, path) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        _fail(path, "expected a number")
    if not math.isfinite(x):
        _fail(path, "expected a finite number")
    return float(x)


def _int(x, path) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        _fail(path, "expected an integer")
    return x


def _list(x, path) -> list:
    if not isinstance(x, list):
        _fail(path, "expected a list")
    return x


def _vec(x, path, length) -> np.ndarray:
    """Scalar broadcast or list of exactly ``length`` numbers."""
    if isinstance(x, list):
        if len(x) != length:
            _fail(path, f"expected {length} values, got {len(x)}")
        return np.array([_num(v, f"{path}[{i}]") for i, v in enumerate(x)])
    return np.full(length, _num(x, path))


def _req(d, key, path):
    if key not in d:
        _fail(path, f"missing field {key!r}")
    return d[key]


def _vertex_count(d, path) -> int:
    n = _int(_req(d, "n", path), f"{path}.n")
    if n < 1:
        _fail(f"{path}.n", "must be positive")
    return n


def _edge_verts(item, path, n, arity=None):
    vs = _list(_req(item, "v", path), f"{path}.v")
    verts = [_int(v, f"{path}.v[{i}]") for i, v in enumerate(vs)]
    if any(v < 0 or v >= n for v in verts):
        _fail(f"{path}.v", f"vertex ids must lie in [0, {n})")
    if len(set(verts)) != len(verts):
        _fail(f"{path}.v", "repeated vertex")
    if arity is not None and len(verts) != arity:
        _fail(f"{path}.v", f"expected {arity} vertices")
    return make_edge(verts)


def _weighted_edges(d, path, n, arity):
    items, seen = [], set()
    for i, item in enumerate(_list(_req(d, "edges", path), f"{path}.edges")):
        p = f"{path}.edges[{i}]"
        _obj(item, p)
        _check_keys(item, p, ("v", "w", "wp"))
        e = _edge_verts(item, p, n, arity)
        if e in seen:
            _fail(p, f"duplicate edge {list(e)}")
        seen.add(e)
        w = _num(item.get("w", 1.0), f"{p}.w")
        items.append((e, w, _num(item.get("wp", w), f"{p}.wp")))
    return items


@dataclass(frozen=True)
class Problem:
    kind: str
    ising: IsingProblem | None  # None for raw hypergraphs
    hypergraph: WeightedHypergraph

    @property
    def n(self) -> int:
        return self.hypergraph.n


def load_problem(doc) -> Problem:
    d = _obj(doc, "problem")
    kind = _req(d, "type", "problem")
    if kind == "maxcut":
        _check_keys(d, "problem", ("type", "n", "edges"))
        n = _vertex_count(d, "problem")
        G = WeightedHypergraph.from_edges(n, _weighted_edges(d, "problem", n, 2))
        ising = maxcut_to_ising(MaxCutInstance(G))
    elif kind == "mis":
        _check_keys(d, "problem", ("type", "n", "edges", "s", "s_phase", "lam1", "lam2",
                                   "lam1_phase", "lam2_phase"))
        n = _vertex_count(d, "problem")
        pairs = []
        for i, item in enumerate(_list(_req(d, "edges", "problem"), "problem.edges")):
            p = f"problem.edges[{i}]"
            _check_keys(_obj(item, p), p, ("v",))
            e = _edge_verts(item, p, n, 2)
            if e in pairs:
                _fail(p, f"duplicate edge {list(e)}")
            pairs.append(e)
        s = _vec(_req(d, "s", "problem"), "problem.s", n)
        sp = _vec(d["s_phase"], "problem.s_phase", n) if "s_phase" in d else None
        lam = {k: _num(d[k], f"problem.{k}") for k in ("lam1", "lam2", "lam1_phase", "lam2_phase") if k in d}
        for k in ("lam1", "lam2"):
            _req(d, k, "problem")
        for k in ("lam2", "lam2_phase"):
            if k in lam and lam[k] <= 0:
                _fail(f"problem.{k}", "must be positive")
        inst = MisInstance(WeightedHypergraph.graph(n, pairs), s, lam["lam1"], lam["lam2"], sp,
                           lam.get("lam1_phase"), lam.get("lam2_phase"))
        ising = mis_to_ising(inst)
    elif kind == "qubo":
        _check_keys(d, "problem", ("type", "Q", "linear", "offset"))
        rows = _list(_req(d, "Q", "problem"), "problem.Q")
        n = len(rows)
        if n == 0:
            _fail("problem.Q", "needs at least one row")
        for i, r in enumerate(rows):
            if len(_list(r, f"problem.Q[{i}]")) != n:
                _fail(f"problem.Q[{i}]", f"expected {n} entries (Q must be square)")
        Q = np.array([[_num(x, f"problem.Q[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)])
        lin = _vec(d["linear"], "problem.linear", n) if "linear" in d else None
        ising = qubo_to_ising(Q, lin, _num(d.get("offset", 0.0), "problem.offset"))
    elif kind == "ising":
        _check_keys(d, "problem", ("type", "n", "a", "h", "edges", "a_phase", "h_phase"))
        n = _vertex_count(d, "problem")
        pairs, J, Jp = [], [], []
        for i, item in enumerate(_list(_req(d, "edges", "problem"), "problem.edges")):
            p = f"problem.edges[{i}]"
            _check_keys(_obj(item, p), p, ("v", "J", "Jp"))
            e = _edge_verts(item, p, n, 2)
            if e in pairs:
                _fail(p, f"duplicate edge {list(e)}")
            pairs.append(e)
            J.append(_num(_req(item, "J", p), f"{p}.J"))
            Jp.append(_num(item.get("Jp", J[-1]), f"{p}.Jp"))
        a = _num(d.get("a", 0.0), "problem.a")
        h = _vec(d.get("h", 0.0), "problem.h", n)
        weights = IsingWeights(a, h, J, _num(d.get("a_phase", a), "problem.a_phase"),
                               _vec(d["h_phase"], "problem.h_phase", n) if "h_phase" in d else h, Jp)
        ising = IsingProblem(WeightedHypergraph.graph(n, pairs, J, Jp), weights)
    elif kind == "hypergraph":
        _check_keys(d, "problem", ("type", "n", "edges"))
        n = _vertex_count(d, "problem")
        G = WeightedHypergraph.from_edges(n, _weighted_edges(d, "problem", n, None))
        return Problem(kind, None, G)
    else:
        _fail("problem.type", f"unknown problem type {kind!r}")
    return Problem(kind, ising, ising_to_hypergraph(ising))


def _pm_mixer(d, n) -> MixerAxes:
    if "mixer" not in d:
        return variant_axes(Variant.VANILLA, n=n)
    mx = _obj(d["mixer"], "params.mixer")
    if "axes" in mx:
        _check_keys(mx, "params.mixer", ("axes",))
        rows = _list(mx["axes"], "params.mixer.axes")
        if len(rows) != n:
            _fail("params.mixer.axes", f"expected {n} axes")
        r = np.array([_vec(_list(row, f"params.mixer.axes[{i}]"), f"params.mixer.axes[{i}]", 3)
                      for i, row in enumerate(rows)])
        norms = np.linalg.norm(r, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-12):
            _fail("params.mixer.axes", "every axis must be a unit vector")
        return MixerAxes(r)
    _check_keys(mx, "params.mixer", ("variant", "theta"))
    name = _req(mx, "variant", "params.mixer")
    try:
        variant = Variant(name)
    except ValueError:
        _fail("params.mixer.variant", f"unknown variant {name!r}")
    if variant is Variant.VANILLA:
        return variant_axes(variant, n=n)
    return variant_axes(variant, _vec(_req(mx, "theta", "params.mixer"), "params.mixer.theta", n))


def load_pm_params(doc, problem: IsingProblem) -> tuple[PmParams, MixerAxes]:
    d = _obj(doc, "params")
    _check_keys(d, "params", ("beta", "gamma", "mixer"))
    n, m = problem.graph.n, problem.graph.m
    beta = _vec(_req(d, "beta", "params"), "params.beta", n)
    g = _req(d, "gamma", "params")
    if isinstance(g, dict):
        _check_keys(g, "params.gamma", ("vertex", "edge", "const"))
        gv = _vec(_req(g, "vertex", "params.gamma"), "params.gamma.vertex", n)
        ge = _vec(_req(g, "edge", "params.gamma"), "params.gamma.edge", m)
        gc = _num(g.get("const", 0.0), "params.gamma.const")
    else:
        gv, ge, gc = _vec(g, "params.gamma", n), _vec(g, "params.gamma", m), 0.0
    return PmParams(beta, gv, ge, gc), _pm_mixer(d, n)


def load_gm_params(doc, G: WeightedHypergraph, state_mode: str, layers: int | None = None):
    d = _obj(doc, "params")
    _check_keys(d, "params", ("beta", "gamma", "state"))
    b = _req(d, "beta", "params")
    g = _req(d, "gamma", "params")
    p = layers
    for x in (b, g):
        if isinstance(x, list):
            if p is not None and len(x) != p:
                _fail("params", f"layer count {len(x)} disagrees with {p}")
            p = len(x)
    p = 1 if p is None else p
    if p < 1:
        _fail("params", "need at least one layer")
    beta = _vec(b, "params.beta", p)
    if isinstance(g, list):
        gamma = np.array([_vec(gl, f"params.gamma[{i}]", G.m) for i, gl in enumerate(g)])
    else:
        gamma = np.full((p, G.m), _num(g, "params.gamma"))
    state = None
    if state_mode == "omega":
        st = _obj(_req(d, "state", "params"), "params.state")
        _check_keys(st, "params.state", ("lambda", "omega"))
        state = ProductStateParams(_vec(st.get("lambda", 0.0), "params.state.lambda", G.n),
                                   _vec(_req(st, "omega", "params.state"), "params.state.omega", G.n))
    return GmParams(gamma.reshape(p, G.m), beta), state
