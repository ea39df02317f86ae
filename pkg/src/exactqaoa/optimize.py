"""Grid scans and pattern-search refinement over shared QAOA angles.

Evaluators take a 1-D float array (one entry per axis) and return the cost
expectation to be maximized.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import SchemaError, TooManyPoints

DEFAULT_POINT_CAP = 1_000_000

Evaluator = Callable[[np.ndarray], float]


def fmt(x: float) -> str:
    return format(float(x), ".17g")


@dataclass(frozen=True)
class AxisSpec:
    """Evenly spaced points from lo to hi inclusive."""

    name: str
    lo: float
    hi: float
    num: int

    def __post_init__(self):
        if not self.name or "," in self.name:
            raise SchemaError(f"bad axis name {self.name!r}")
        if int(self.num) < 2:
            raise SchemaError(f"axis {self.name} needs at least 2 points")
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise SchemaError(f"axis {self.name} has a non-finite bound")
        object.__setattr__(self, "num", int(self.num))

    @classmethod
    def parse(cls, text: str) -> "AxisSpec":
        """From 'name:lo:hi:num'."""
        parts = text.split(":")
        if len(parts) != 4:
            raise SchemaError(f"axis {text!r} is not of the form name:lo:hi:num")
        try:
            return cls(parts[0], float(parts[1]), float(parts[2]), int(parts[3]))
        except ValueError as exc:
            raise SchemaError(f"axis {text!r}: {exc}") from None

    def points(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.num)


@dataclass(frozen=True)
class Landscape:
    axes: tuple[AxisSpec, ...]
    values: np.ndarray  # shape (axes[0].num, axes[1].num, ...)

    def grid(self) -> list[np.ndarray]:
        return [a.points() for a in self.axes]

    def point(self, flat_index: int) -> np.ndarray:
        idx = np.unravel_index(flat_index, self.values.shape)
        return np.array([g[i] for g, i in zip(self.grid(), idx)])

    def argmax(self) -> tuple[np.ndarray, float]:
        # np.argmax returns the first maximal cell in C (row-major) order
        k = int(np.argmax(self.values))
        return self.point(k), float(self.values.reshape(-1)[k])

    def rows(self):
        for k, v in enumerate(self.values.reshape(-1)):
            yield self.point(k), float(v)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([a.name for a in self.axes] + ["value"])
        for pt, v in self.rows():
            w.writerow([fmt(x) for x in pt] + [fmt(v)])
        return buf.getvalue()

    def to_json(self) -> str:
        axes = ",".join(
            '{"name":%s,"lo":%s,"hi":%s,"num":%d}' % (json.dumps(a.name), fmt(a.lo), fmt(a.hi), a.num)
            for a in self.axes
        )
        vals = ",".join(fmt(v) for v in self.values.reshape(-1))
        return '{"axes":[%s],"values":[%s]}\n' % (axes, vals)

    @classmethod
    def from_csv(cls, text: str) -> "Landscape":
        rows = list(csv.reader(io.StringIO(text)))
        names = rows[0][:-1]
        data = np.array([[float(x) for x in r] for r in rows[1:]])
        axes = []
        for j, name in enumerate(names):
            uniq = np.unique(data[:, j])
            axes.append(AxisSpec(name, float(uniq[0]), float(uniq[-1]), len(uniq)))
        shape = tuple(a.num for a in axes)
        return cls(tuple(axes), data[:, -1].reshape(shape))

    @classmethod
    def from_json(cls, text: str) -> "Landscape":
        obj = json.loads(text)
        axes = tuple(AxisSpec(a["name"], a["lo"], a["hi"], a["num"]) for a in obj["axes"])
        return cls(axes, np.array(obj["values"], dtype=float).reshape(tuple(a.num for a in axes)))


def grid_scan(evaluator: Evaluator, axes: Sequence[AxisSpec], cap: int | None = DEFAULT_POINT_CAP) -> Landscape:
    axes = tuple(axes)
    if not 1 <= len(axes) <= 3:
        raise SchemaError(f"grid scans take 1 to 3 axes, got {len(axes)}")
    shape = tuple(a.num for a in axes)
    total = int(np.prod(shape))
    if cap is not None and total > cap:
        raise TooManyPoints(total, cap)
    grids = [a.points() for a in axes]
    values = np.empty(total)
    for k, idx in enumerate(np.ndindex(*shape)):
        values[k] = evaluator(np.array([g[i] for g, i in zip(grids, idx)]))
    return Landscape(axes, values.reshape(shape))


@dataclass(frozen=True)
class RefineResult:
    point: np.ndarray
    value: float
    evaluations: int
    final_step: float


def refine(evaluator: Evaluator, start, tol: float = 1e-8, step: float = 0.1,
           max_evaluations: int = 100_000) -> RefineResult:
    """Hooke-Jeeves pattern search; the step halves whenever a sweep fails.

    An exploratory sweep tries +step then -step along each coordinate in
    order and keeps every strict improvement. After a successful sweep the
    search jumps once more along the direction just travelled and explores
    around the landing point, which keeps it moving along shallow valleys.
    Stops when the step drops below ``tol`` or the evaluation budget is spent.
    """
    x = np.array(start, dtype=float).reshape(-1)
    if tol <= 0 or step <= 0:
        raise ValueError("tol and step must be positive")
    fx = float(evaluator(x))
    if not math.isfinite(fx):
        raise ValueError("evaluator is not finite at the starting point")
    evals = 1

    def explore(base, fbase):
        nonlocal evals
        y, fy = base.copy(), fbase
        for i in range(y.size):
            for sign in (1.0, -1.0):
                if evals >= max_evaluations:
                    return y, fy
                z = y.copy()
                z[i] += sign * step
                fz = float(evaluator(z))
                evals += 1
                if fz > fy:
                    y, fy = z, fz
                    break
        return y, fy

    while step >= tol and evals < max_evaluations:
        y, fy = explore(x, fx)
        if not fy > fx:
            step *= 0.5
            continue
        while evals < max_evaluations:
            z = y + (y - x)
            fz = float(evaluator(z))
            evals += 1
            x, fx = y, fy
            y, fy = explore(z, fz)
            if not fy > fx:
                y, fy = x, fx
                break
    return RefineResult(x, fx, evals, step)
