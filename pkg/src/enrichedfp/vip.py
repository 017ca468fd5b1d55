"""Variational inequality problems solved by projected Krasnoselskii iteration.

VIP(S, C): find ``x* in C`` with ``<S x*, x - x*> >= 0`` for all ``x in C``.
For any ``gamma > 0`` this is equivalent to the fixed point problem of
``P_C o (I - gamma S)``, so the fixed point engine applies directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, PreconditionError
from .iteration import FixedPointResult, IterationConfig, solve
from .operators import Operator, ProjectedOperator
from .sets import ConvexSet, project, sample_points

__all__ = ["VipProblem", "vip_operator", "solve_vip", "vi_residual"]

MEMBERSHIP_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class VipProblem:
    """Data of VIP(S, C) with the reformulation step size ``gamma``."""

    S: Operator
    gamma: float
    set: ConvexSet

    def __post_init__(self):
        if not self.gamma > 0.0:
            raise ParameterError("gamma must be positive")

    @property
    def space(self):
        return self.S.space


def vip_operator(p: VipProblem) -> ProjectedOperator:
    """Fixed-point reformulation ``x -> P_C(x - gamma S(x))``.

    Fixed points of the returned operator are exactly the solutions of
    VIP(S, C).
    """
    return ProjectedOperator(convex_set=p.set, gamma=p.gamma, inner_op=p.S)


def solve_vip(p: VipProblem, b: float, cfg: IterationConfig, x0) -> FixedPointResult:
    """Projected Krasnoselskii iteration
    ``x_{n+1} = (1-lam) x_n + lam P_C(x_n - gamma S(x_n))`` with ``lam = 1/(b+1)``
    when automatic."""
    return solve(vip_operator(p), b, cfg, x0)


def vi_residual(p: VipProblem, x_star, probes: int = 1000, seed: int = 0) -> float:
    """Sampled optimality gap ``min_x <S(x*), x - x*>`` over points of C.

    A valid solution gives a value >= -1e-9; a markedly negative value flags a
    non-solution.  ``x_star`` must belong to C (checked via its projection
    distance).
    """
    space = p.space
    x_star = space.require_member(x_star)
    gap = space.norm(x_star - project(space, p.set, x_star))
    if gap > MEMBERSHIP_TOL:
        raise PreconditionError(
            f"x_star is {gap:.3e} from C, beyond the {MEMBERSHIP_TOL:g} membership tolerance")
    if probes < 1:
        raise ParameterError("probes must be >= 1")
    s_val = p.S.apply(x_star)
    rng = np.random.default_rng(seed)
    pts = sample_points(space, p.set, rng, probes, anchor=x_star)
    best = np.inf
    for row in pts:
        best = min(best, space.inner(s_val, row - x_star))
    return float(best)
