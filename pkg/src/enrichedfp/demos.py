"""Built-in demo problems, one per worked example of the method family.

* ``kannan-affine`` — the reflection ``T x = 1 - x`` on the line, certified
  with b = 1 (averaged map is the constant 1/2).
* ``lebesgue`` — ``T f = 1 - 3 f`` on a two-atom weighted space of total
  measure one, certified with b = 3 (averaged map is the constant 1/4); at
  b = 0 the condition is refuted by the (0, 1) pair.
* ``vip-ball`` — projected problem on the unit ball whose reformulated
  operator is the constant map (-1, 0).
* ``cosine`` — ``T x = cos x``, the classical periodic-point illustration;
  not certified under the enrichment condition, included for the stability
  checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConfigError
from .operators import AffineOperator, CustomOperator, Operator
from .sets import Ball
from .space import WeightedSpace, euclidean
from .vip import VipProblem, vip_operator

__all__ = ["Demo", "DEMOS", "get_demo"]


@dataclass(frozen=True, eq=False)
class Demo:
    """A preconfigured problem: operator, enrichment parameter and defaults."""

    name: str
    make_space: Callable[[], WeightedSpace]
    make_operator: Callable[[WeightedSpace], Operator]
    b: float
    x0: tuple
    certified: bool
    start_lo: tuple
    start_hi: tuple
    make_vip: Callable[[WeightedSpace], VipProblem] | None = None

    def space(self) -> WeightedSpace:
        return self.make_space()

    def operator(self, space: WeightedSpace) -> Operator:
        return self.make_operator(space)

    def vip(self, space: WeightedSpace) -> VipProblem | None:
        return self.make_vip(space) if self.make_vip is not None else None


def _kannan_operator(space: WeightedSpace) -> Operator:
    return AffineOperator(space, matrix=[[-1.0]], offset=[1.0])


def _lebesgue_space() -> WeightedSpace:
    # Two atoms of measure 1/2 each: total measure one, so the constant-one
    # function has norm one.
    return WeightedSpace.weighted([0.5, 0.5])


def _lebesgue_operator(space: WeightedSpace) -> Operator:
    return AffineOperator(space, matrix=-3.0 * np.eye(space.dim),
                          offset=np.ones(space.dim))


def _vip_ball_inner(space: WeightedSpace) -> Operator:
    # S(x) = ((1, 0) + x) / gamma with gamma = 2.
    return AffineOperator(space, matrix=0.5 * np.eye(2), offset=[0.5, 0.0])


def _vip_ball_problem(space: WeightedSpace) -> VipProblem:
    return VipProblem(S=_vip_ball_inner(space), gamma=2.0,
                      set=Ball(center=[0.0, 0.0], radius=1.0))


def _cosine_operator(space: WeightedSpace) -> Operator:
    return CustomOperator(space, np.cos, name="cosine")


DEMOS: dict[str, Demo] = {
    "kannan-affine": Demo(
        name="kannan-affine",
        make_space=lambda: euclidean(1),
        make_operator=_kannan_operator,
        b=1.0,
        x0=(0.0,),
        certified=True,
        start_lo=(-1.0,),
        start_hi=(1.0,),
    ),
    "lebesgue": Demo(
        name="lebesgue",
        make_space=_lebesgue_space,
        make_operator=_lebesgue_operator,
        b=3.0,
        x0=(0.0, 0.0),
        certified=True,
        start_lo=(-1.0, -1.0),
        start_hi=(1.0, 1.0),
    ),
    "vip-ball": Demo(
        name="vip-ball",
        make_space=lambda: euclidean(2),
        make_operator=lambda space: vip_operator(_vip_ball_problem(space)),
        b=0.0,
        x0=(0.0, 0.0),
        certified=False,
        start_lo=(-1.0, -1.0),
        start_hi=(1.0, 1.0),
        make_vip=_vip_ball_problem,
    ),
    "cosine": Demo(
        name="cosine",
        make_space=lambda: euclidean(1),
        make_operator=_cosine_operator,
        b=0.0,
        x0=(0.0,),
        certified=False,
        start_lo=(0.0,),
        start_hi=(float(np.pi),),
    ),
}


def get_demo(name: str) -> Demo:
    try:
        return DEMOS[name]
    except KeyError:
        known = ", ".join(sorted(DEMOS))
        raise ConfigError(f"unknown demo {name!r}; known demos: {known}",
                          field="operator.name") from None
