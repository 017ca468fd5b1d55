"""Stability harnesses for the fixed point problem of an averaged operator.

Three checks, all phrased for ``T_lam`` with ``lam = 1/(b+1)``:

* well-posedness: any point's distance to the fixed point is bounded by its own
  residual, so vanishing residuals force convergence to the fixed point;
* periodic point property: every composition ``(T_lam)^n`` has the same fixed
  point set as ``T_lam`` itself, probed by multistart solves plus clustering;
* Ulam-Hyers stability: every eps-solution (residual <= eps) lies within eps
  of the true fixed point (linear stability function with slope one).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DivergenceError, EnrichedFPError, PreconditionError
from .iteration import IterationConfig, StopRule, solve
from .operators import AveragedOperator, IteratedOperator, Operator

__all__ = [
    "StabilityReport", "wellposed_check", "periodic_point_check",
    "ulam_hyers_check", "FIXED_POINT_RESIDUAL_TOL",
]

# A point passed in as "the fixed point" must have at most this residual.
FIXED_POINT_RESIDUAL_TOL = 1e-10

_SLACK = 1e-9


@dataclass(eq=False)
class StabilityReport:
    """Outcome of one stability check.

    ``worst_margin`` is the largest observed excess over the theoretical bound
    (negative when every case has slack).  ``details`` holds one record per
    probe/case.  ``inconclusive`` marks checks that could not produce evidence
    (e.g. no eps-solutions found); an inconclusive check is not a pass.
    """

    kind: str
    passed: bool
    worst_margin: float
    details: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    inconclusive: bool = False

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "passed": self.passed,
            "worst_margin": self.worst_margin,
            "inconclusive": self.inconclusive,
            "notes": list(self.notes),
            "details": [dict(d) for d in self.details],
        }


def _require_fixed_point(T_lam: Operator, x_star) -> np.ndarray:
    x_star = T_lam.space.require_member(x_star)
    res = T_lam.space.norm(x_star - T_lam.apply(x_star))
    if res > FIXED_POINT_RESIDUAL_TOL:
        raise PreconditionError(
            f"x_star residual {res:.3e} exceeds {FIXED_POINT_RESIDUAL_TOL:g}; "
            "not a converged fixed point")
    return x_star


def wellposed_check(T: Operator, b: float, x_star, perturbed) -> StabilityReport:
    """Error-vs-residual bound ``||w - x*|| <= ||w - T_lam w||`` on each probe.

    Probes are reported sorted by residual, making the domination visible:
    residuals going to zero force the errors to zero.
    """
    lam = 1.0 / (b + 1.0)
    T_lam = AveragedOperator(T, lam)
    x_star = _require_fixed_point(T_lam, x_star)
    if len(perturbed) == 0:
        raise PreconditionError("perturbed point list must be nonempty")

    space = T.space
    details = []
    for w in perturbed:
        w = space.require_member(w)
        residual = space.norm(w - T_lam.apply(w))
        error = space.norm(w - x_star)
        details.append({
            "input": w.tolist(),
            "bound": residual,
            "observed": error,
            "margin": error - residual,
        })
    details.sort(key=lambda d: d["bound"])
    worst = max(d["margin"] for d in details)
    return StabilityReport(kind="wellposed", passed=worst <= _SLACK,
                           worst_margin=worst, details=details)


def periodic_point_check(T: Operator, b: float, n_list, starts,
                         cluster_tol: float = 1e-6) -> StabilityReport:
    """Multistart probe of ``Fix((T_lam)^n) = Fix(T_lam)``.

    For each composition order ``n`` and each start, runs Picard iteration on
    the n-fold composition, then clusters the converged endpoints.  Passes iff
    there is exactly one cluster and its representative is a fixed point of
    ``T_lam`` itself (within ``cluster_tol``).
    """
    if len(n_list) == 0 or len(starts) == 0:
        raise PreconditionError("n_list and starts must be nonempty")
    for n in n_list:
        if n < 1:
            raise PreconditionError("composition orders must be >= 1")
    lam = 1.0 / (b + 1.0)
    T_lam = AveragedOperator(T, lam)
    space = T.space
    picard = IterationConfig(lam=1.0, stop_rule=StopRule.RESIDUAL, tol=1e-10,
                             max_iter=100_000)

    details = []
    endpoints = []
    failures = 0
    for n in n_list:
        composed = IteratedOperator(T_lam, n)
        for x0 in starts:
            record = {"n": int(n), "start": space.require_member(x0).tolist()}
            try:
                result = solve(composed, 0.0, picard, x0)
            except (DivergenceError, EnrichedFPError) as exc:
                failures += 1
                record.update({"converged": False, "error": str(exc)})
                details.append(record)
                continue
            record.update({
                "converged": bool(result.converged),
                "endpoint": result.x_star.tolist(),
                "iterations": result.iterations,
            })
            details.append(record)
            if result.converged:
                endpoints.append(result.x_star)
            else:
                failures += 1

    clusters: list[np.ndarray] = []
    for p in endpoints:
        if not any(space.norm(p - rep) <= cluster_tol for rep in clusters):
            clusters.append(p)

    worst = 0.0
    match = False
    if len(clusters) == 1:
        rep = clusters[0]
        worst = space.norm(rep - T_lam.apply(rep))
        match = worst <= cluster_tol
    passed = failures == 0 and len(clusters) == 1 and match
    report = StabilityReport(kind="periodic", passed=passed, worst_margin=worst,
                             details=details)
    report.notes.append(f"clusters={len(clusters)} failures={failures}")
    if clusters:
        report.notes.append(f"representative={clusters[0].tolist()}")
    return report


def ulam_hyers_check(T: Operator, b: float, x_star, epsilons,
                     probes_per_eps: int = 12, seed: int = 0) -> StabilityReport:
    """Eps-solution error bound ``||x* - w|| <= eps`` for each accepted probe.

    Candidate probes lie on spheres of radius ``eps * k`` around the fixed
    point with k cycling through 0.5, 1, 2; a candidate is accepted as an
    eps-solution when its residual ``||w - T_lam w||`` is at most eps.  With
    no accepted probe for some eps the check is inconclusive.
    """
    lam = 1.0 / (b + 1.0)
    T_lam = AveragedOperator(T, lam)
    x_star = _require_fixed_point(T_lam, x_star)
    for eps in epsilons:
        if not eps > 0.0:
            raise PreconditionError("epsilons must be positive")
    if probes_per_eps < 1:
        raise PreconditionError("probes_per_eps must be >= 1")

    space = T.space
    rng = np.random.default_rng(seed)
    radii_factors = (0.5, 1.0, 2.0)
    details = []
    worst = -np.inf
    inconclusive = False
    notes = []
    for eps in epsilons:
        accepted = 0
        for j in range(probes_per_eps):
            g = rng.standard_normal(space.dim)
            gn = space.norm(g)
            if gn == 0.0:
                g = space.ones()
                gn = space.norm(g)
            direction = g / gn
            radius = eps * radii_factors[j % len(radii_factors)]
            w = x_star + radius * direction
            residual = space.norm(w - T_lam.apply(w))
            is_solution = residual <= eps
            record = {
                "eps": float(eps),
                "input": w.tolist(),
                "residual": residual,
                "accepted": bool(is_solution),
            }
            if is_solution:
                accepted += 1
                error = space.norm(x_star - w)
                record["bound"] = float(eps)
                record["observed"] = error
                record["margin"] = error - eps
                worst = max(worst, error - eps)
            details.append(record)
        if accepted == 0:
            inconclusive = True
            notes.append(f"no eps-solutions found for eps={eps:g}")
    if not np.isfinite(worst):
        worst = np.inf
    passed = (not inconclusive) and worst <= _SLACK
    return StabilityReport(kind="ulam", passed=passed, worst_margin=float(worst),
                           details=details, notes=notes, inconclusive=inconclusive)
