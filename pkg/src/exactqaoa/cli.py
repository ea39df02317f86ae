"""Command line front end: expect, verify, scan, refine.

Exit codes: 0 success, 1 verification mismatch (or an internal consistency
failure), 2 schema or I/O error, 3 a size cap was exceeded.
"""
from __future__ import annotations

import argparse
import hashlib
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import gm, oracle, pm
from .errors import CapExceeded, ExactQaoaError, SchemaError
from .hypergraph import DEFAULT_DIMENSION_CAP, WeightedHypergraph
from .optimize import DEFAULT_POINT_CAP, AxisSpec, fmt, grid_scan, refine
from .params import GmParams, IsingWeights, MixerAxes, PmParams, ProductStateParams
from .problems import IsingProblem, ising_to_hypergraph
from .schema import Problem, load_gm_params, load_pm_params, load_problem, parse_json
from .splitmix import SplitMix64

EXIT_OK, EXIT_MISMATCH, EXIT_SCHEMA, EXIT_CAP = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


# evaluation


@dataclass
class Evaluation:
    terms: list  # (vertices, weight, value)
    total: float


def _pm_eval(ip: IsingProblem, params: PmParams, axes: MixerAxes) -> Evaluation:
    _check_axes(axes, ip.graph.n)
    fu, fuv = pm.expectation_terms(ip.weights, params, axes, ip.graph)
    w = ip.weights
    terms = [((), w.a, 1.0)]
    terms += [((u,), w.h[u], fu[u]) for u in range(ip.graph.n)]
    terms += [(e, J, v) for e, J, v in zip(ip.graph.edges, w.J, fuv)]
    return Evaluation(terms, pm.expectation_total(w, params, axes, ip.graph))


def _pm_oracle(ip: IsingProblem, params: PmParams, axes: MixerAxes, cap: int) -> Evaluation:
    res = oracle.run_pm(ip.graph, ip.weights, params, axes, cap=cap)
    w = ip.weights
    terms = [((), w.a, 1.0)]
    terms += [((u,), w.h[u], res.vertex[u]) for u in range(ip.graph.n)]
    terms += [(e, J, v) for e, J, v in zip(ip.graph.edges, w.J, res.edge)]
    return Evaluation(terms, res.total)


def _gm_eval(G: WeightedHypergraph, params: GmParams, mode: str, state, dim_cap: int) -> Evaluation:
    ctx = gm.GmContext(G, state if mode == "omega" else None, dimension_cap=dim_cap)
    z = gm.expectation_terms_p(G, params, mode, state, ctx=ctx)
    total = gm.expectation_total_p(G, params, mode, state, ctx=ctx)
    return Evaluation(list(zip(G.edges, G.weights, z)), total)


def _gm_oracle(G: WeightedHypergraph, params: GmParams, state, cap: int) -> Evaluation:
    res = oracle.run_gm(G, params, state, cap=cap)
    return Evaluation(list(zip(G.edges, G.weights, res.edge)), res.total)


def _check_axes(axes: MixerAxes, n: int):
    if axes.n != n:
        raise SchemaError(f"mixer axes cover {axes.n} vertices, problem has {n}")


@dataclass
class Job:
    """A loaded problem plus parameters, ready for either path."""

    mode: str
    state_mode: str
    problem: Problem
    pm_params: PmParams | None = None
    axes: MixerAxes | None = None
    gm_params: GmParams | None = None
    state: ProductStateParams | None = None
    digests: dict = field(default_factory=dict)

    @property
    def layers(self) -> int:
        return 1 if self.mode == "pm" else self.gm_params.p

    def analytic(self, dim_cap: int) -> Evaluation:
        if self.mode == "pm":
            return _pm_eval(self.problem.ising, self.pm_params, self.axes)
        return _gm_eval(self.problem.hypergraph, self.gm_params, self.state_mode, self.state, dim_cap)

    def simulate(self, cap: int) -> Evaluation:
        if self.mode == "pm":
            return _pm_oracle(self.problem.ising, self.pm_params, self.axes, cap)
        return _gm_oracle(self.problem.hypergraph, self.gm_params, self.state, cap)


def _make_job(problem: Problem, params_doc, mode: str, state_mode: str, layers) -> Job:
    job = Job(mode, state_mode, problem)
    if mode == "pm":
        if problem.ising is None:
            raise SchemaError("problem.type: hypergraph problems need --mode gm")
        if state_mode != "s":
            raise SchemaError("--state omega applies to --mode gm only")
        if layers not in (None, 1):
            raise SchemaError("--mode pm has exactly one layer")
        job.pm_params, job.axes = load_pm_params(params_doc, problem.ising)
    else:
        job.gm_params, job.state = load_gm_params(params_doc, problem.hypergraph, state_mode, layers)
    return job


# serialization; floats always use 17 significant digits


def _dump(obj) -> str:
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(k)}:{_dump(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_dump(v) for v in obj) + "]"
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    x = float(obj)
    if not math.isfinite(x):
        raise ValueError("non-finite value in report")
    return fmt(x)


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _report(job: Job, ev: Evaluation) -> dict:
    return {
        "digest": job.digests.get("problem"),
        "params_digest": job.digests.get("params"),
        "mode": job.mode,
        "state": job.state_mode,
        "layers": job.layers,
        "terms": [{"v": list(e), "weight": w, "value": v} for e, w, v in ev.terms],
        "total": ev.total,
    }


def _terms_csv(ev: Evaluation) -> str:
    buf = io.StringIO()
    buf.write("v,weight,value\n")
    for e, w, v in ev.terms:
        buf.write(f"{' '.join(str(x) for x in e)},{fmt(w)},{fmt(v)}\n")
    buf.write(f"total,,{fmt(ev.total)}\n")
    return buf.getvalue()


def _max_error(a: Evaluation, b: Evaluation) -> float:
    errs = [abs(x[2] - y[2]) for x, y in zip(a.terms, b.terms)]
    errs.append(abs(a.total - b.total))
    return float(max(errs))


# I/O helpers


def _read(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror}") from None


def _load(path: str, what: str):
    data = _read(path)
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise SchemaError(f"{path}: not UTF-8 text") from None
    return data, parse_json(text, path)


def _write(path: str | None, text: str, out) -> None:
    if path is None or path == "-":
        out.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror}") from None


def _job_from_files(args) -> Job:
    pdata, pdoc = _load(args.problem, "problem")
    problem = load_problem(pdoc)
    if args.params is None:
        raise SchemaError("a params file is required")
    qdata, qdoc = _load(args.params, "params")
    job = _make_job(problem, qdoc, args.mode, args.state, args.layers)
    job.digests = {"problem": _digest(pdata), "params": _digest(qdata)}
    return job


# seeded random instances


def random_job(rng: SplitMix64, mode: str, state_mode: str, layers: int | None) -> Job:
    two_pi = 2 * math.pi
    if mode == "pm":
        n = rng.integer(2, 7)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.uniform() < 0.5]
        m = len(pairs)
        vals = [rng.uniform(-2, 2) for _ in range(2 * (1 + n + m))]
        a, ap = vals[0], vals[1]
        h, hp = np.array(vals[2:2 + n]), np.array(vals[2 + n:2 + 2 * n])
        J, Jp = np.array(vals[2 + 2 * n:2 + 2 * n + m]), np.array(vals[2 + 2 * n + m:])
        G = WeightedHypergraph.graph(n, pairs, J, Jp)
        ip = IsingProblem(G, IsingWeights(a, h, J, ap, hp, Jp))
        problem = Problem("ising", ip, ising_to_hypergraph(ip))
        params = PmParams([rng.uniform(-math.pi, math.pi) for _ in range(n)],
                          [rng.uniform(-math.pi, math.pi) for _ in range(n)],
                          [rng.uniform(-math.pi, math.pi) for _ in range(m)])
        rows = []
        while len(rows) < n:
            r = np.array([rng.uniform(-1, 1) for _ in range(3)])
            norm = float(np.linalg.norm(r))
            if norm > 1e-3:
                rows.append(r / norm)
        job = Job(mode, "s", problem, pm_params=params, axes=MixerAxes(np.array(rows)))
    else:
        n = rng.integer(2, 6)
        m_target = rng.integer(1, 8)
        items, seen = [], set()
        for _ in range(8 * m_target):
            if len(items) == m_target:
                break
            k = rng.integer(0, min(3, n))
            pool = list(range(n))
            verts = tuple(sorted(pool.pop(rng.integer(0, len(pool) - 1)) for _ in range(k)))
            if verts in seen:
                continue
            seen.add(verts)
            items.append((verts, rng.uniform(-2, 2), rng.uniform(-2, 2)))
        G = WeightedHypergraph.from_edges(n, items)
        p = layers or 1
        params = GmParams([[rng.uniform(-math.pi, math.pi) for _ in range(G.m)] for _ in range(p)],
                          [rng.uniform(-math.pi, math.pi) for _ in range(p)])
        state = None
        if state_mode == "omega":
            state = ProductStateParams([rng.uniform(0, two_pi) for _ in range(n)],
                                       [rng.uniform(0, math.pi) for _ in range(n)])
        job = Job(mode, state_mode, Problem("hypergraph", None, G), gm_params=params, state=state)
    return job


# shared-angle evaluators for scan and refine


def _axis_binder(job: Job, names):
    """Map axis values onto a job's parameters.

    ``beta`` and ``gamma`` broadcast over every vertex, edge and layer.
    In gm mode ``betaL`` / ``gammaL`` (1-based L) bind a single layer.
    """
    p = job.layers
    for name in names:
        ok = name in ("beta", "gamma")
        if job.mode == "gm" and name[:4] == "beta" and name[4:].isdigit():
            ok = 1 <= int(name[4:]) <= p
        if job.mode == "gm" and name[:5] == "gamma" and name[5:].isdigit():
            ok = 1 <= int(name[5:]) <= p
        if not ok:
            raise SchemaError(f"unknown axis name {name!r} for --mode {job.mode} with {p} layer(s)")

    def evaluate(point, dim_cap):
        if job.mode == "pm":
            b, gv, ge = (np.array(x) for x in (job.pm_params.beta, job.pm_params.gamma_vertex,
                                               job.pm_params.gamma_edge))
            for name, x in zip(names, point):
                if name == "beta":
                    b[:] = x
                else:
                    gv[:] = x
                    ge[:] = x
            j = Job(job.mode, job.state_mode, job.problem, pm_params=PmParams(b, gv, ge), axes=job.axes)
        else:
            b, g = np.array(job.gm_params.beta), np.array(job.gm_params.gamma)
            for name, x in zip(names, point):
                if name == "beta":
                    b[:] = x
                elif name == "gamma":
                    g[:] = x
                elif name.startswith("beta"):
                    b[int(name[4:]) - 1] = x
                else:
                    g[int(name[5:]) - 1] = x
            j = Job(job.mode, job.state_mode, job.problem, gm_params=GmParams(g, b), state=job.state)
        return j.analytic(dim_cap).total

    return evaluate


def _base_job(args) -> Job:
    pdata, pdoc = _load(args.problem, "problem")
    problem = load_problem(pdoc)
    if args.params is not None:
        qdata, qdoc = _load(args.params, "params")
    else:
        qdata = b""
        qdoc = {"beta": 0.0, "gamma": 0.0}
        if args.mode == "gm":
            qdoc = {"beta": [0.0] * (args.layers or 1), "gamma": [0.0] * (args.layers or 1)}
            if args.state == "omega":
                raise SchemaError("--state omega needs a params file with a state block")
    job = _make_job(problem, qdoc, args.mode, args.state, args.layers)
    job.digests = {"problem": _digest(pdata), "params": _digest(qdata)}
    return job


# commands


def cmd_expect(args, out) -> int:
    job = _job_from_files(args)
    t0 = time.perf_counter()
    ev = job.analytic(args.dimension_cap)
    elapsed = time.perf_counter() - t0
    if args.format == "csv":
        out.write(_terms_csv(ev))
        return EXIT_OK
    rep = _report(job, ev)
    if args.timing:
        rep["timing_s"] = elapsed
    out.write(_dump(rep) + "\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.seed is not None:
        if args.problem is not None:
            raise SchemaError("give either a problem file or --seed, not both")
        rng = SplitMix64(args.seed)
        jobs = [random_job(rng, args.mode, args.state, args.layers) for _ in range(args.count)]
    else:
        if args.problem is None:
            raise SchemaError("verify needs a problem file or --seed")
        jobs = [_job_from_files(args)]
    results, worst = [], 0.0
    t0 = time.perf_counter()
    for job in jobs:
        ev = job.analytic(args.dimension_cap)
        ev.total += args.perturb  # negative control: shifts the analytic cost offset
        ref = job.simulate(args.oracle_cap)
        err = _max_error(ev, ref)
        worst = max(worst, err)
        results.append((job, ev, ref, err))
    elapsed = time.perf_counter() - t0
    ok = worst < args.threshold
    if args.seed is None:
        job, ev, ref, err = results[0]
        rep = _report(job, ev)
        rep["oracle"] = {"total": ref.total, "max_abs_error": err, "threshold": args.threshold, "ok": ok}
    else:
        rep = {
            "seed": args.seed, "mode": args.mode, "state": args.state,
            "instances": [{"n": j.problem.n, "m": j.problem.hypergraph.m if j.mode == "gm" else j.problem.ising.graph.m,
                           "total": ev.total, "oracle_total": ref.total, "max_abs_error": err}
                          for j, ev, ref, err in results],
            "max_abs_error": worst, "threshold": args.threshold, "ok": ok,
        }
    if args.timing:
        rep["timing_s"] = elapsed
    out.write(_dump(rep) + "\n")
    return EXIT_OK if ok else EXIT_MISMATCH


def _parse_axes(texts):
    if not texts:
        raise SchemaError("at least one --axis name:lo:hi:num is required")
    axes = [AxisSpec.parse(t) for t in texts]
    if len({a.name for a in axes}) != len(axes):
        raise SchemaError("axis names must be distinct")
    return axes


def cmd_scan(args, out) -> int:
    job = _base_job(args)
    axes = _parse_axes(args.axis)
    sign = -1.0 if args.minimize else 1.0
    evaluate = _axis_binder(job, [a.name for a in axes])
    land = grid_scan(lambda x: sign * evaluate(x, args.dimension_cap), axes, cap=args.max_points)
    if sign < 0:
        land = type(land)(land.axes, -land.values)
    text = land.to_csv() if args.format == "csv" else land.to_json()
    _write(args.output, text, out)
    return EXIT_OK


def _parse_start(texts):
    names, values = [], []
    for t in texts or []:
        name, sep, val = t.partition("=")
        if not sep:
            raise SchemaError(f"--start {t!r} is not of the form name=value")
        try:
            values.append(float(val))
        except ValueError:
            raise SchemaError(f"--start {t!r}: bad number") from None
        names.append(name)
    return names, values


def cmd_refine(args, out) -> int:
    job = _base_job(args)
    sign = -1.0 if args.minimize else 1.0
    if args.axis:
        axes = _parse_axes(args.axis)
        names = [a.name for a in axes]
        evaluate = _axis_binder(job, names)
        land = grid_scan(lambda x: sign * evaluate(x, args.dimension_cap), axes, cap=args.max_points)
        start, _ = land.argmax()
    else:
        names, start = _parse_start(args.start)
        if not names:
            raise SchemaError("refine needs --start name=value entries or --axis grids")
        if len(set(names)) != len(names):
            raise SchemaError("start names must be distinct")
        evaluate = _axis_binder(job, names)
    res = refine(lambda x: sign * evaluate(x, args.dimension_cap), start, tol=args.tol, step=args.step)
    rep = {
        "digest": job.digests.get("problem"),
        "mode": job.mode,
        "state": job.state_mode,
        "layers": job.layers,
        "start": dict(zip(names, (float(x) for x in start))),
        "point": dict(zip(names, (float(x) for x in res.point))),
        "value": sign * res.value,
        "evaluations": res.evaluations,
    }
    out.write(_dump(rep) + "\n")
    return EXIT_OK


# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(EXIT_SCHEMA, f"{self.prog}: {message}")


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    shared = _Parser(add_help=False)
    shared.add_argument("--mode", choices=("pm", "gm"), default="pm")
    shared.add_argument("--state", choices=("s", "omega"), default="s")
    shared.add_argument("--layers", type=_positive_int, default=None)
    shared.add_argument("--oracle-cap", type=int, default=oracle.DEFAULT_ORACLE_CAP)
    shared.add_argument("--dimension-cap", type=int, default=DEFAULT_DIMENSION_CAP)
    shared.add_argument("--threshold", type=float, default=1e-9)
    shared.add_argument("--seed", type=int, default=None)
    shared.add_argument("--format", choices=("json", "csv"), default="json")
    shared.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")

    parser = _Parser(prog="exactqaoa", description="Exact QAOA cost expectations and oracle checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("expect", parents=[shared], help="evaluate the analytic expectation")
    p.add_argument("problem")
    p.add_argument("params")

    p = sub.add_parser("verify", parents=[shared], help="compare analytic and statevector results")
    p.add_argument("problem", nargs="?")
    p.add_argument("params", nargs="?")
    p.add_argument("--count", type=_positive_int, default=1)
    p.add_argument("--perturb", type=float, default=0.0,
                   help="shift the analytic cost offset by this amount (negative control)")

    for name, helptext in (("scan", "grid scan of shared angles"), ("refine", "pattern-search refinement")):
        p = sub.add_parser(name, parents=[shared], help=helptext)
        p.add_argument("problem")
        p.add_argument("--params", default=None, help="base parameters; unscanned angles come from here")
        p.add_argument("--axis", action="append", default=[], help="name:lo:hi:num")
        p.add_argument("--max-points", type=int, default=DEFAULT_POINT_CAP)
        p.add_argument("--minimize", action="store_true")
        if name == "scan":
            p.add_argument("-o", "--output", default=None)
        else:
            p.add_argument("--start", action="append", default=[], help="name=value")
            p.add_argument("--tol", type=float, default=1e-8)
            p.add_argument("--step", type=float, default=0.1)
    return parser


_COMMANDS = {"expect": cmd_expect, "verify": cmd_verify, "scan": cmd_scan, "refine": cmd_refine}


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except CliError as exc:
        err.write(f"error: {exc}\n")
        return exc.code
    except CapExceeded as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CAP
    except (SchemaError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_SCHEMA
    except ExactQaoaError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_SCHEMA if isinstance(exc, (KeyError, ValueError)) else EXIT_MISMATCH


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
