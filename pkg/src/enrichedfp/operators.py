"""Self-maps of a weighted space and their averaged transforms.

An operator ``T`` is a deterministic pure function on the space.  The averaged
transform ``T_lam = (1 - lam) I + lam T`` shares its fixed-point set with ``T``
for every ``lam`` in (0, 1], and Krasnoselskii iteration of ``T`` is exactly
Picard iteration of ``T_lam``.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import DimensionMismatchError, NumericOverflowError, ParameterError
from .sets import ConvexSet, project
from .space import WeightedSpace

__all__ = [
    "Operator", "AffineOperator", "CustomOperator", "ProjectedOperator",
    "AveragedOperator", "IteratedOperator", "averaged", "iterate_n",
]


class Operator:
    """Deterministic self-map of a :class:`WeightedSpace`.

    Subclasses implement ``_evaluate``; :meth:`apply` adds conformance checks
    on input and output.  Instances are immutable and reentrant; custom
    evaluation functions must be pure and thread-safe by contract.
    """

    def __init__(self, space: WeightedSpace):
        self.space = space

    def _evaluate(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def apply(self, x) -> np.ndarray:
        x = self.space.require_member(x)
        y = np.asarray(self._evaluate(x), dtype=float)
        if y.shape != (self.space.dim,):
            raise DimensionMismatchError(
                f"operator returned shape {y.shape}, expected ({self.space.dim},)")
        if not np.all(np.isfinite(y)):
            raise NumericOverflowError("operator produced a non-finite value")
        return y

    __call__ = apply


class AffineOperator(Operator):
    """``x -> A x + c`` for a square matrix ``A`` and offset ``c``."""

    def __init__(self, space: WeightedSpace, matrix, offset):
        super().__init__(space)
        A = np.asarray(matrix, dtype=float)
        c = space.require_member(offset)
        if A.shape != (space.dim, space.dim):
            raise DimensionMismatchError(
                f"matrix has shape {A.shape}, expected ({space.dim}, {space.dim})")
        if not np.all(np.isfinite(A)):
            raise ParameterError("matrix entries must be finite")
        self.matrix = A
        self.offset = c

    def _evaluate(self, x):
        return self.matrix @ x + self.offset


class CustomOperator(Operator):
    """Operator backed by a user-supplied pure function."""

    def __init__(self, space: WeightedSpace, fn: Callable[[np.ndarray], np.ndarray],
                 name: str = "custom"):
        super().__init__(space)
        self.fn = fn
        self.name = name

    def _evaluate(self, x):
        return self.fn(x)


class ProjectedOperator(Operator):
    """``x -> P_C(x - gamma * S(x))`` for a convex set ``C`` and inner map ``S``."""

    def __init__(self, convex_set: ConvexSet, gamma: float, inner_op: Operator):
        super().__init__(inner_op.space)
        if not gamma > 0.0:
            raise ParameterError("gamma must be positive")
        self.convex_set = convex_set
        self.gamma = gamma
        self.inner_op = inner_op

    def _evaluate(self, x):
        return project(self.space, self.convex_set, x - self.gamma * self.inner_op.apply(x))


class AveragedOperator(Operator):
    """``T_lam = (1 - lam) I + lam T`` for ``lam`` in (0, 1].

    ``lam = 1`` reproduces the base operator exactly.
    """

    def __init__(self, base: Operator, lam: float):
        if not 0.0 < lam <= 1.0:
            raise ParameterError(f"averaging parameter must lie in (0, 1], got {lam}")
        super().__init__(base.space)
        self.base = base
        self.lam = lam

    def _evaluate(self, x):
        return (1.0 - self.lam) * x + self.lam * self.base.apply(x)


class IteratedOperator(Operator):
    """n-fold composition of a base operator; ``n = 0`` is the identity."""

    def __init__(self, base: Operator, n: int):
        if n < 0:
            raise ParameterError("composition count must be >= 0")
        super().__init__(base.space)
        self.base = base
        self.n = n

    def _evaluate(self, x):
        for _ in range(self.n):
            x = self.base.apply(x)
        return x


def averaged(T: Operator, lam: float) -> AveragedOperator:
    """Averaged transform of ``T`` with parameter ``lam`` in (0, 1]."""
    return AveragedOperator(T, lam)


def iterate_n(T: Operator, x0, n: int) -> np.ndarray:
    """n-th iterate ``T^n(x0)``, with ``T^0`` the identity.

    Raises :class:`NumericOverflowError` carrying the offending step index if an
    intermediate value is non-finite.
    """
    if n < 0:
        raise ParameterError("iteration count must be >= 0")
    x = T.space.require_member(x0)
    for k in range(n):
        try:
            x = T.apply(x)
        except NumericOverflowError as exc:
            raise NumericOverflowError(
                f"non-finite iterate at step {k + 1}", step=k + 1) from exc
    return x
