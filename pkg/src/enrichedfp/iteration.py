"""Krasnoselskii iteration engine with certified error bounds.

The scheme ``x_{n+1} = (1 - lam) x_n + lam T(x_n)`` is Picard iteration of the
averaged operator ``T_lam``.  For an (a, b, alpha)-certified operator with
``lam = 1/(b+1)`` the averaged map satisfies the interpolative Kannan
contraction, which yields the quantitative chain

    step contraction   ||x_{n+1} - x_n||  <=  a ||x_n - x_{n-1}||
    geometric decay    ||x_{n+1} - x_n||  <=  a^n ||x_1 - x_0||
    tail bound         ||x_n - x_{n+r}||  <=  a^n / (1-a) ||x_1 - x_0||

:func:`check_bounds` verifies all three on a recorded trace.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DivergenceError, ParameterError
from .operators import AveragedOperator, Operator
from .space import WeightedSpace, euclidean

__all__ = [
    "StopRule", "IterationConfig", "Trace", "FixedPointResult",
    "BoundCheck", "BoundReport", "solve", "asymptotic_regularity",
    "check_bounds", "DIVERGENCE_LIMIT",
]

# Any coordinate beyond this magnitude aborts the iteration before overflow.
DIVERGENCE_LIMIT = 1e150


class StopRule(str, Enum):
    """Stopping criteria.

    APRIORI and APOSTERIORI use the certified constant ``a`` through the
    geometric-tail bounds; RESIDUAL stops on the raw displacement and needs no
    certificate.
    """

    APRIORI = "apriori"
    APOSTERIORI = "aposteriori"
    RESIDUAL = "residual"


@dataclass(frozen=True)
class IterationConfig:
    """Iteration parameters.

    ``lam = None`` means automatic: ``lam = 1/(b+1)`` from the ``b`` passed to
    :func:`solve`.  ``a`` is the certified contraction constant; required (and
    < 1) for the bound-based stop rules.
    """

    lam: float | None = None
    a: float | None = None
    tol: float = 1e-10
    max_iter: int = 1_000_000
    stop_rule: StopRule = StopRule.RESIDUAL

    def __post_init__(self):
        if not self.tol > 0.0:
            raise ParameterError("tol must be positive")
        if self.max_iter < 1:
            raise ParameterError("max_iter must be >= 1")
        if self.lam is not None and not 0.0 < self.lam <= 1.0:
            raise ParameterError(f"lambda must lie in (0, 1], got {self.lam}")
        if self.a is not None and not 0.0 <= self.a < 1.0:
            raise ParameterError(f"a must lie in [0, 1), got {self.a}")

    def resolve_lambda(self, b: float) -> float:
        if self.lam is not None:
            return self.lam
        if b is None or b < 0.0:
            raise ParameterError("automatic lambda needs b >= 0")
        return 1.0 / (b + 1.0)


CSV_HEADER = ("n", "step_norm", "residual", "apriori_bound", "aposteriori_bound")


@dataclass(eq=False)
class Trace:
    """Per-iteration record of a Krasnoselskii run.

    Row ``n`` describes the iterate ``x_n``: its forward displacement
    ``||x_{n+1} - x_n||`` (which equals the residual ``||x_n - T_lam x_n||``
    by construction, same float), the a-priori bound ``a^n/(1-a) ||x_1 - x_0||``
    and the a-posteriori bound ``a/(1-a) ||x_n - x_{n-1}||`` (NaN at row 0,
    which has no incoming step).  Iterates ``x_0 .. x_N`` are retained so the
    pairwise tail bound can be checked.
    """

    space: WeightedSpace
    steps: np.ndarray
    iterates: np.ndarray
    a: float | None = None

    def __post_init__(self):
        self.steps = np.asarray(self.steps, dtype=float)
        self.iterates = np.asarray(self.iterates, dtype=float)
        if self.iterates.shape[0] != self.steps.shape[0] + 1:
            raise ParameterError("trace needs one more iterate than steps")

    @classmethod
    def from_step_norms(cls, step_norms, a: float | None = None) -> "Trace":
        """Synthetic one-dimensional trace realizing the given step norms.

        Iterates are cumulative sums, so consecutive distances reproduce the
        steps exactly and pairwise distances are the worst case allowed by the
        triangle inequality.
        """
        steps = np.asarray(step_norms, dtype=float)
        iterates = np.concatenate([[0.0], np.cumsum(steps)])[:, None]
        return cls(space=euclidean(1), steps=steps, iterates=iterates, a=a)

    def __len__(self) -> int:
        return int(self.steps.shape[0])

    def step_norm(self, n: int) -> float:
        return float(self.steps[n])

    def residual(self, n: int) -> float:
        return float(self.steps[n])

    def apriori_bound(self, n: int) -> float:
        if self.a is None:
            return math.nan
        return self.a ** n / (1.0 - self.a) * float(self.steps[0])

    def aposteriori_bound(self, n: int) -> float:
        if self.a is None or n == 0:
            return math.nan
        return self.a / (1.0 - self.a) * float(self.steps[n - 1])

    def rows(self):
        for n in range(len(self)):
            yield (n, self.step_norm(n), self.residual(n),
                   self.apriori_bound(n), self.aposteriori_bound(n))

    def to_csv(self) -> str:
        """Render the trace with 17 significant digits (bit-faithful floats)."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for n, step, res, apri, apost in self.rows():
            writer.writerow([n, f"{step:.17g}", f"{res:.17g}",
                             f"{apri:.17g}", f"{apost:.17g}"])
        return buf.getvalue()


@dataclass(eq=False)
class FixedPointResult:
    """Outcome of a solve: approximate fixed point plus certified diagnostics."""

    x_star: np.ndarray
    iterations: int
    converged: bool
    final_bound: float
    trace: Trace
    lam: float
    rule: StopRule


def solve(T: Operator, b: float, cfg: IterationConfig, x0) -> FixedPointResult:
    """Krasnoselskii iteration of ``T`` from ``x0``.

    ``lam`` comes from the config, or ``1/(b+1)`` when automatic.  Stops when
    the selected rule's bound drops to ``cfg.tol`` or ``max_iter`` is reached;
    the last computed iterate is returned.  ``iterations`` counts operator
    evaluations.
    """
    lam = cfg.resolve_lambda(b)
    if not 0.0 < lam <= 1.0:
        raise ParameterError(f"lambda must lie in (0, 1], got {lam}")
    a = cfg.a
    if cfg.stop_rule in (StopRule.APRIORI, StopRule.APOSTERIORI):
        if a is None:
            raise ParameterError(f"stop rule {cfg.stop_rule.value} requires a certified a < 1")
    T_lam = AveragedOperator(T, lam)
    space = T.space

    x = np.array(space.require_member(x0), dtype=float)
    steps: list[float] = []
    iterates: list[np.ndarray] = [x]
    converged = False
    bound = math.inf
    iterations = 0

    for k in range(cfg.max_iter):
        x_next = T_lam.apply(x)
        iterations = k + 1
        if np.max(np.abs(x_next)) > DIVERGENCE_LIMIT:
            partial = Trace(space=space, steps=np.array(steps),
                            iterates=np.array(iterates), a=a)
            raise DivergenceError(
                f"iterate magnitude exceeded {DIVERGENCE_LIMIT:g} at step {k}",
                step=k, trace=partial)
        step = space.norm(x_next - x)
        steps.append(step)
        iterates.append(x_next)
        if cfg.stop_rule is StopRule.RESIDUAL:
            bound = step
        elif cfg.stop_rule is StopRule.APRIORI:
            bound = a ** k / (1.0 - a) * steps[0]
        else:  # APOSTERIORI
            bound = a / (1.0 - a) * step
        x = x_next
        if bound <= cfg.tol:
            converged = True
            break

    trace = Trace(space=space, steps=np.array(steps), iterates=np.array(iterates), a=a)
    return FixedPointResult(x_star=x, iterations=iterations, converged=converged,
                            final_bound=bound, trace=trace, lam=lam,
                            rule=cfg.stop_rule)


def asymptotic_regularity(T: Operator, lam: float, x0, n_max: int) -> np.ndarray:
    """Displacement sequence ``||T_lam^{n+1} x0 - T_lam^n x0||`` for n = 0..n_max-1.

    The sequence vanishing for every start is asymptotic regularity of the
    averaged map; the raw map (lam = 1) may fail it while ``T_{1/2}`` succeeds.
    """
    if n_max < 1:
        raise ParameterError("n_max must be >= 1")
    T_lam = AveragedOperator(T, lam)
    space = T.space
    x = space.require_member(x0)
    out = np.empty(n_max)
    for n in range(n_max):
        x_next = T_lam.apply(x)
        if np.max(np.abs(x_next)) > DIVERGENCE_LIMIT:
            raise DivergenceError(
                f"iterate magnitude exceeded {DIVERGENCE_LIMIT:g} at step {n}", step=n)
        out[n] = space.norm(x_next - x)
        x = x_next
    return out


@dataclass(frozen=True)
class BoundCheck:
    """One inequality family: worst margin is max(observed - bound), <= slack passes."""

    name: str
    passed: bool
    worst_margin: float
    checked: int


@dataclass(frozen=True)
class BoundReport:
    step_contraction: BoundCheck
    geometric_decay: BoundCheck
    tail_bound: BoundCheck

    @property
    def passed(self) -> bool:
        return (self.step_contraction.passed and self.geometric_decay.passed
                and self.tail_bound.passed)


def check_bounds(trace: Trace, a: float, slack: float = 1e-9) -> BoundReport:
    """Verify the contraction bound chain on a recorded trace.

    Checks, with absolute slack: step contraction ``s_n <= a s_{n-1}``,
    geometric decay ``s_n <= a^n s_0``, and the pairwise tail bound
    ``||x_n - x_m|| <= a^n/(1-a) s_0`` for all recorded n < m.
    """
    if not 0.0 <= a < 1.0:
        raise ParameterError(f"a must lie in [0, 1), got {a}")
    if len(trace) < 2:
        raise ParameterError("check_bounds needs a trace with at least 2 rows")
    steps = trace.steps

    ri_margins = steps[1:] - a * steps[:-1]
    ri = BoundCheck("step_contraction", bool(np.max(ri_margins) <= slack),
                    float(np.max(ri_margins)), int(ri_margins.size))

    powers = a ** np.arange(len(trace))
    riz_margins = steps - powers * steps[0]
    riz = BoundCheck("geometric_decay", bool(np.max(riz_margins) <= slack),
                     float(np.max(riz_margins)), int(riz_margins.size))

    worst = -math.inf
    checked = 0
    coef = steps[0] / (1.0 - a)
    for n in range(trace.iterates.shape[0] - 1):
        bound_n = a ** n * coef
        for m in range(n + 1, trace.iterates.shape[0]):
            dist = trace.space.norm(trace.iterates[n] - trace.iterates[m])
            worst = max(worst, dist - bound_n)
            checked += 1
    wer = BoundCheck("tail_bound", worst <= slack, worst, checked)

    return BoundReport(step_contraction=ri, geometric_decay=riz, tail_bound=wer)
