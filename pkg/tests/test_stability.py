"""Stability harness tests: well-posedness, periodic points, Ulam-Hyers.

Positive cases use the bundled demo operators, whose averaged maps have
closed-form fixed points; negative cases use maps that genuinely violate the
bound in question, so a pass here means the harness detects real violations.
"""

import json
import math

import numpy as np
import pytest

from enrichedfp import (AffineOperator, CustomOperator, PreconditionError,
                        StabilityReport, euclidean, periodic_point_check,
                        ulam_hyers_check, wellposed_check)

COS_ROOT = 0.7390851332151607  # root of cos x = x, frozen from bisection


# -- well-posedness ----------------------------------------------------------


def test_wellposed_reflection_dominates_error_by_residual(reflection):
    probes = [[0.5 + 1.0 / k] for k in range(1, 21)]
    report = wellposed_check(reflection, 1.0, [0.5], probes)
    assert report.passed
    assert report.kind == "wellposed"
    assert report.worst_margin <= 1e-9
    assert len(report.details) == 20


def test_wellposed_details_sorted_by_residual(reflection):
    probes = [[3.0], [0.6], [1.5]]
    report = wellposed_check(reflection, 1.0, [0.5], probes)
    bounds = [d["bound"] for d in report.details]
    assert bounds == sorted(bounds)


def test_wellposed_steep_reflection(steep_reflection):
    x_star = [0.25, 0.25]
    probes = [np.array(x_star) + (1.0 / k) * np.array([1.0, 0.0])
              for k in range(1, 101)]
    report = wellposed_check(steep_reflection, 3.0, x_star, probes)
    assert report.passed
    assert report.worst_margin <= 1e-9


def test_wellposed_margin_is_tight_for_constant_averaged_map(reflection):
    # lam = 1/2 turns the reflection into the constant map 0.5, so the
    # residual equals the error exactly and every margin is zero.
    report = wellposed_check(reflection, 1.0, [0.5], [[2.0], [-1.0]])
    for d in report.details:
        assert d["margin"] == pytest.approx(0.0, abs=1e-15)


def test_wellposed_detects_violation(line):
    # Halving has error = 2 * residual, so the slope-one bound fails.
    T = AffineOperator(line, matrix=[[0.5]], offset=[0.0])
    report = wellposed_check(T, 0.0, [0.0], [[1.0], [4.0]])
    assert not report.passed
    assert report.worst_margin == pytest.approx(2.0)  # error 4 vs residual 2


def test_wellposed_rejects_non_fixed_point(reflection):
    with pytest.raises(PreconditionError):
        wellposed_check(reflection, 1.0, [0.3], [[1.0]])


def test_wellposed_rejects_empty_probe_list(reflection):
    with pytest.raises(PreconditionError):
        wellposed_check(reflection, 1.0, [0.5], [])


# -- periodic point property -------------------------------------------------


def test_periodic_reflection_single_cluster(reflection):
    starts = [[x] for x in np.linspace(-3.0, 3.0, 7)]
    report = periodic_point_check(reflection, 1.0, [1, 2, 3], starts)
    assert report.passed
    assert any(n.startswith("clusters=1") for n in report.notes)
    rep = next(n for n in report.notes if n.startswith("representative="))
    value = json.loads(rep.split("=", 1)[1])
    assert value[0] == pytest.approx(0.5, abs=1e-12)


def test_periodic_cosine_matches_oracle(line):
    T = CustomOperator(line, np.cos, name="cosine")
    starts = [[x] for x in np.linspace(-1.0, 3.0, 5)]
    report = periodic_point_check(T, 0.0, [1, 2], starts)
    assert report.passed
    rep = next(n for n in report.notes if n.startswith("representative="))
    value = json.loads(rep.split("=", 1)[1])
    assert abs(value[0] - COS_ROOT) <= 1e-6


def test_periodic_detects_genuine_two_cycle(line):
    # x -> -x has Fix(T^2) = R but Fix(T) = {0}: endpoints stay at the
    # starts, the clustering sees two groups, and the check fails.
    T = AffineOperator(line, matrix=[[-1.0]], offset=[0.0])
    report = periodic_point_check(T, 0.0, [2], [[-1.0], [1.0]])
    assert not report.passed
    assert any("clusters=2" in n for n in report.notes)


def test_periodic_records_per_start_details(reflection):
    report = periodic_point_check(reflection, 1.0, [1], [[0.0], [2.0]])
    assert len(report.details) == 2
    for d in report.details:
        assert d["converged"]
        assert d["endpoint"][0] == pytest.approx(0.5, abs=1e-10)


def test_periodic_rejects_bad_inputs(reflection):
    with pytest.raises(PreconditionError):
        periodic_point_check(reflection, 1.0, [], [[0.0]])
    with pytest.raises(PreconditionError):
        periodic_point_check(reflection, 1.0, [1], [])
    with pytest.raises(PreconditionError):
        periodic_point_check(reflection, 1.0, [0], [[0.0]])


# -- Ulam-Hyers stability ----------------------------------------------------


def test_ulam_reflection_accepts_and_bounds(reflection):
    epsilons = [1e-1, 1e-3, 1e-6]
    report = ulam_hyers_check(reflection, 1.0, [0.5], epsilons, seed=0)
    assert report.passed
    assert not report.inconclusive
    assert report.worst_margin <= 1e-9
    for eps in epsilons:
        accepted = [d for d in report.details
                    if d["eps"] == eps and d["accepted"]]
        assert accepted  # every eps produced at least one eps-solution
        for d in accepted:
            assert d["observed"] <= eps + 1e-9


def test_ulam_rejects_probes_with_large_residual(reflection):
    # Constant averaged map: residual equals distance, so the radius-2eps
    # probes are never eps-solutions.
    report = ulam_hyers_check(reflection, 1.0, [0.5], [1e-2], seed=1)
    rejected = [d for d in report.details if not d["accepted"]]
    assert rejected
    for d in rejected:
        assert d["residual"] > 1e-2


def test_ulam_inconclusive_when_no_eps_solutions_exist(line):
    # x -> 4x: residual = 3 * distance, so even the closest probes at
    # radius eps/2 have residual 1.5 eps and nothing is accepted.
    T = AffineOperator(line, matrix=[[4.0]], offset=[0.0])
    report = ulam_hyers_check(T, 0.0, [0.0], [1e-1, 1e-3], seed=0)
    assert report.inconclusive
    assert not report.passed
    assert math.isinf(report.worst_margin)
    assert any("no eps-solutions" in n for n in report.notes)


def test_ulam_detects_violation_on_identity(line):
    # Identity: every point has residual zero, so probes at radius 2 eps
    # are accepted yet sit farther than eps from the chosen fixed point.
    T = AffineOperator(line, matrix=[[1.0]], offset=[0.0])
    report = ulam_hyers_check(T, 0.0, [0.0], [1e-1], seed=0)
    assert not report.inconclusive
    assert not report.passed
    assert report.worst_margin == pytest.approx(1e-1)


def test_ulam_same_seed_reproduces_details(reflection):
    r1 = ulam_hyers_check(reflection, 1.0, [0.5], [1e-3], seed=7)
    r2 = ulam_hyers_check(reflection, 1.0, [0.5], [1e-3], seed=7)
    assert r1.details == r2.details
    assert r1.worst_margin == r2.worst_margin


def test_ulam_validations(reflection):
    with pytest.raises(PreconditionError):
        ulam_hyers_check(reflection, 1.0, [0.5], [0.0])
    with pytest.raises(PreconditionError):
        ulam_hyers_check(reflection, 1.0, [0.5], [-1e-3])
    with pytest.raises(PreconditionError):
        ulam_hyers_check(reflection, 1.0, [0.5], [1e-3], probes_per_eps=0)
    with pytest.raises(PreconditionError):
        ulam_hyers_check(reflection, 1.0, [0.4], [1e-3])


# -- report serialization ----------------------------------------------------


def test_report_to_dict_is_json_ready(reflection):
    report = wellposed_check(reflection, 1.0, [0.5], [[1.0]])
    payload = report.to_dict()
    assert set(payload) == {"kind", "passed", "worst_margin", "inconclusive",
                            "notes", "details"}
    json.dumps(payload)  # must not raise


def test_report_defaults():
    report = StabilityReport(kind="custom", passed=True, worst_margin=-1.0)
    assert report.details == []
    assert report.notes == []
    assert not report.inconclusive
