"""Parameter containers shared by the analytic engines and the oracle."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SchemaError


def _vec(x, name, length=None) -> np.ndarray:
    arr = np.asarray(x, dtype=float).reshape(-1)
    if length is not None and arr.shape[0] != length:
        raise SchemaError(f"{name} has length {arr.shape[0]}, expected {length}")
    if not np.all(np.isfinite(arr)):
        raise SchemaError(f"{name} contains non-finite values")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class MixerAxes:
    """Per-vertex unit rotation axes, stored as an (n, 3) array of (x, y, z)."""

    r: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        if r.ndim != 2 or r.shape[1] != 3:
            raise SchemaError(f"mixer axes must have shape (n, 3), got {r.shape}")
        norms = np.linalg.norm(r, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-12):
            raise SchemaError("mixer axes must be unit vectors")
        r = r.copy()
        r.setflags(write=False)
        object.__setattr__(self, "r", r)

    @property
    def n(self) -> int:
        return self.r.shape[0]

    def __getitem__(self, u):
        return self.r[u]


@dataclass(frozen=True)
class IsingWeights:
    """Cost weights (a, h, J) and phase weights (a', h', J').

    ``J`` and ``J_phase`` follow the edge order of the owning graph.
    """

    a: float
    h: np.ndarray
    J: np.ndarray
    a_phase: float
    h_phase: np.ndarray
    J_phase: np.ndarray

    def __post_init__(self):
        h = _vec(self.h, "h")
        J = _vec(self.J, "J")
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "a_phase", float(self.a_phase))
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "h_phase", _vec(self.h_phase, "h_phase", len(h)))
        object.__setattr__(self, "J_phase", _vec(self.J_phase, "J_phase", len(J)))

    @classmethod
    def same(cls, a, h, J) -> "IsingWeights":
        """Phase weights equal to cost weights."""
        return cls(a, h, J, a, h, J)


@dataclass(frozen=True)
class PmParams:
    beta: np.ndarray
    gamma_vertex: np.ndarray
    gamma_edge: np.ndarray
    gamma_const: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "beta", _vec(self.beta, "beta"))
        object.__setattr__(self, "gamma_vertex", _vec(self.gamma_vertex, "gamma_vertex", len(self.beta)))
        object.__setattr__(self, "gamma_edge", _vec(self.gamma_edge, "gamma_edge"))
        object.__setattr__(self, "gamma_const", float(self.gamma_const))

    @classmethod
    def uniform(cls, n: int, m: int, beta: float, gamma: float) -> "PmParams":
        return cls(np.full(n, beta), np.full(n, gamma), np.full(m, gamma))


@dataclass(frozen=True)
class ProductStateParams:
    """Angles of the product state R_Z(lam) R_Y(omega)|0> on every qubit.

    Angles are reduced to lam in [0, 2pi) and omega in [0, pi]. An omega
    outside that range is reflected (omega -> 2pi - omega) together with
    lam -> lam + pi, which yields the same state up to a global phase.
    """

    lam: np.ndarray
    omega: np.ndarray

    def __post_init__(self):
        lam = np.array(_vec(self.lam, "lambda"))
        omega = np.array(_vec(self.omega, "omega", len(lam)))
        omega = np.mod(omega, 2 * math.pi)
        flip = omega > math.pi
        omega[flip] = 2 * math.pi - omega[flip]
        lam[flip] += math.pi
        lam = np.mod(lam, 2 * math.pi)
        lam.setflags(write=False)
        omega.setflags(write=False)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "omega", omega)

    @classmethod
    def plus(cls, n: int) -> "ProductStateParams":
        return cls(np.zeros(n), np.full(n, math.pi / 2))

    @property
    def n(self) -> int:
        return len(self.omega)

    def cos_omega(self) -> np.ndarray:
        # omega == pi/2 maps to an exact zero so |s> sums prune exactly
        c = np.cos(self.omega)
        c[self.omega == math.pi / 2] = 0.0
        return c


@dataclass(frozen=True)
class GmParams:
    """Per-layer per-edge phase angles (p, m) and per-layer mixer angles (p,)."""

    gamma: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        g = np.array(self.gamma, dtype=float)
        if g.ndim == 1:
            g = g[None, :]
        if g.ndim != 2 or g.shape[0] < 1:
            raise SchemaError("gamma must have shape (p, m) with p >= 1")
        if not np.all(np.isfinite(g)):
            raise SchemaError("gamma contains non-finite values")
        b = np.array(_vec(self.beta, "beta", g.shape[0]))
        g.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "beta", b)

    @property
    def p(self) -> int:
        return self.gamma.shape[0]

    @property
    def m(self) -> int:
        return self.gamma.shape[1]
