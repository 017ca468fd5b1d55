"""Finite-dimensional real inner-product spaces with positive quadrature weights.

A :class:`WeightedSpace` is a discretized version of a weighted L2 space: a
point is a coordinate vector and the inner product is ``sum_i w_i x_i y_i``
with all weights positive.  All-ones weights give the standard Euclidean
space.  Vectors are plain float64 numpy arrays; the space only validates and
measures them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, ParameterError

__all__ = ["WeightedSpace", "euclidean"]


@dataclass(frozen=True, eq=False)
class WeightedSpace:
    """Ambient space: dimension plus positive per-coordinate weights.

    Instances are immutable and safe to share across threads.
    """

    dim: int
    weights: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise ParameterError(f"dim must be a positive integer, got {self.dim!r}")
        w = self.weights
        if w is None:
            w = np.ones(self.dim)
        w = np.asarray(w, dtype=float)
        if w.shape != (self.dim,):
            raise DimensionMismatchError(
                f"weights have shape {w.shape}, expected ({self.dim},)")
        if not np.all(np.isfinite(w)) or np.any(w <= 0.0):
            raise ParameterError("all weights must be finite and positive")
        w = w.copy()
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def weighted(cls, weights) -> "WeightedSpace":
        w = np.asarray(weights, dtype=float)
        return cls(dim=int(w.shape[0]), weights=w)

    @property
    def is_euclidean(self) -> bool:
        return bool(np.all(self.weights == 1.0))

    def zeros(self) -> np.ndarray:
        return np.zeros(self.dim)

    def ones(self) -> np.ndarray:
        return np.ones(self.dim)

    def vector(self, data) -> np.ndarray:
        """Validate ``data`` as a member of this space and return it as float64."""
        return self.require_member(data)

    def require_member(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise DimensionMismatchError(
                f"vector has shape {x.shape}, expected ({self.dim},)")
        if not np.all(np.isfinite(x)):
            raise ParameterError("vector entries must be finite")
        return x

    # -- metric structure -----------------------------------------------------

    def inner(self, x, y) -> float:
        """Weighted inner product ``sum_i w_i x_i y_i``."""
        x = self.require_member(x)
        y = self.require_member(y)
        return float(np.sum(self.weights * x * y))

    def norm(self, x) -> float:
        """Norm induced by :meth:`inner` (same arithmetic path)."""
        return float(np.sqrt(self.inner(x, x)))

    def dist(self, x, y) -> float:
        return self.norm(np.asarray(x, dtype=float) - np.asarray(y, dtype=float))


def euclidean(dim: int) -> WeightedSpace:
    """Standard Euclidean space of the given dimension (all weights one)."""
    return WeightedSpace(dim=dim)
