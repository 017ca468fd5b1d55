"""Projectable convex sets: ball, box, halfspace, probability simplex.

Projections are nearest-point maps in the space's inner product.  Ball and
halfspace use the weighted inner product directly; the box clamp is exact for
any diagonal weights.  The simplex projection is the classical sorted-threshold
procedure and is restricted to Euclidean weights, where it is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .space import WeightedSpace

__all__ = [
    "ConvexSet", "Ball", "Box", "Halfspace", "Simplex",
    "project", "contains", "sample_points",
]


class ConvexSet:
    """Closed convex subset with a computable nearest-point projection."""

    def project(self, space: WeightedSpace, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def contains(self, space: WeightedSpace, x: np.ndarray, tol: float = 1e-12) -> bool:
        raise NotImplementedError

    def sample(self, space: WeightedSpace, rng: np.random.Generator, n: int,
               anchor: np.ndarray | None = None) -> np.ndarray:
        """Draw ``n`` points uniformly from the set, shape ``(n, dim)``."""
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class Ball(ConvexSet):
    """``{x : ||x - center|| <= radius}`` in the space norm."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        if not self.radius > 0.0:
            raise ParameterError("ball radius must be positive")

    def project(self, space, x):
        c = space.require_member(self.center)
        d = x - c
        nd = space.norm(d)
        if nd <= self.radius:
            return np.array(x, dtype=float)
        return c + (self.radius / nd) * d

    def contains(self, space, x, tol=1e-12):
        return space.norm(x - space.require_member(self.center)) <= self.radius + tol

    def sample(self, space, rng, n, anchor=None):
        # Uniform in the weighted ball: uniform in the whitened Euclidean ball,
        # then un-whiten (y_i = x_i * sqrt(w_i) maps the ball to a round one).
        d = space.dim
        g = rng.standard_normal((n, d))
        norms = np.linalg.norm(g, axis=1, keepdims=True)
        norms[norms == 0.0] = 1.0
        radii = self.radius * rng.random(n) ** (1.0 / d)
        white = radii[:, None] * (g / norms)
        return self.center + white / np.sqrt(space.weights)


@dataclass(frozen=True, eq=False)
class Box(ConvexSet):
    """Axis-aligned box ``{x : lo <= x <= hi}`` (componentwise)."""

    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lo, dtype=float)
        hi = np.asarray(self.hi, dtype=float)
        if lo.shape != hi.shape:
            raise ParameterError("box lo and hi must have the same shape")
        if np.any(lo > hi):
            raise ParameterError("box requires lo <= hi componentwise")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def project(self, space, x):
        return np.clip(x, self.lo, self.hi)

    def contains(self, space, x, tol=1e-12):
        return bool(np.all(x >= self.lo - tol) and np.all(x <= self.hi + tol))

    def sample(self, space, rng, n, anchor=None):
        u = rng.random((n, space.dim))
        return self.lo + u * (self.hi - self.lo)


@dataclass(frozen=True, eq=False)
class Halfspace(ConvexSet):
    """``{x : <normal, x> <= offset}`` in the space inner product."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        nrm = np.asarray(self.normal, dtype=float)
        if not np.any(nrm != 0.0):
            raise ParameterError("halfspace normal must be nonzero")
        object.__setattr__(self, "normal", nrm)

    def project(self, space, x):
        n = space.require_member(self.normal)
        excess = space.inner(n, x) - self.offset
        if excess <= 0.0:
            return np.array(x, dtype=float)
        return x - (excess / space.inner(n, n)) * n

    def contains(self, space, x, tol=1e-12):
        n = space.require_member(self.normal)
        return space.inner(n, x) <= self.offset + tol * (1.0 + space.norm(n))

    def sample(self, space, rng, n, anchor=None):
        # Rejection from a unit-halfwidth box patch around an interior anchor.
        if anchor is None:
            anchor = self.project(space, space.zeros())
        out = np.empty((n, space.dim))
        got = 0
        while got < n:
            cand = (anchor - 1.0) + 2.0 * rng.random((max(n - got, 16), space.dim))
            for row in cand:
                if got >= n:
                    break
                if space.inner(self.normal, row) <= self.offset:
                    out[got] = row
                    got += 1
        return out


@dataclass(frozen=True, eq=False)
class Simplex(ConvexSet):
    """Probability simplex ``{x >= 0, sum_i x_i = 1}``."""

    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ParameterError("simplex dimension must be >= 1")

    def project(self, space, x):
        # Sorted-threshold Euclidean projection (Held/Wolfe/Crowder scheme);
        # under non-uniform weights it would not be the nearest point.
        if not space.is_euclidean:
            raise ParameterError(
                "simplex projection is defined for Euclidean weights only")
        u = np.sort(x)[::-1]
        css = np.cumsum(u) - 1.0
        ind = np.arange(1, x.size + 1)
        rho = ind[u - css / ind > 0][-1]
        theta = css[rho - 1] / rho
        return np.maximum(x - theta, 0.0)

    def contains(self, space, x, tol=1e-12):
        return bool(np.all(x >= -tol) and abs(float(np.sum(x)) - 1.0) <= tol)

    def sample(self, space, rng, n, anchor=None):
        e = rng.standard_exponential((n, self.dim))
        return e / e.sum(axis=1, keepdims=True)


def project(space: WeightedSpace, convex_set: ConvexSet, x) -> np.ndarray:
    """Nearest point of ``convex_set`` to ``x`` in the space norm."""
    return convex_set.project(space, space.require_member(x))


def contains(space: WeightedSpace, convex_set: ConvexSet, x, tol: float = 1e-12) -> bool:
    return convex_set.contains(space, space.require_member(x), tol)


def sample_points(space: WeightedSpace, convex_set: ConvexSet,
                  rng: np.random.Generator, n: int,
                  anchor=None) -> np.ndarray:
    """Seeded uniform samples from the set; deterministic given the generator state."""
    if anchor is not None:
        anchor = space.require_member(anchor)
    return convex_set.sample(space, rng, n, anchor)
