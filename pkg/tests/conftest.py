"""Shared fixtures: canonical operators, spaces and a CLI runner."""

from __future__ import annotations

import json

import numpy as np
import pytest

from enrichedfp import (AffineOperator, Ball, VipProblem, WeightedSpace, euclidean)
from enrichedfp.cli import main as cli_main


@pytest.fixture
def line():
    return euclidean(1)


@pytest.fixture
def plane():
    return euclidean(2)


@pytest.fixture
def reflection(line):
    """T x = 1 - x on the line; averaged with lam = 1/2 it is constant 1/2."""
    return AffineOperator(line, matrix=[[-1.0]], offset=[1.0])


@pytest.fixture
def two_atom_space():
    """Two atoms of measure 1/2 each (total measure one)."""
    return WeightedSpace.weighted([0.5, 0.5])


@pytest.fixture
def steep_reflection(two_atom_space):
    """T f = 1 - 3 f on the two-atom space; fixed point is the constant 1/4."""
    return AffineOperator(two_atom_space, matrix=-3.0 * np.eye(2),
                          offset=[1.0, 1.0])


@pytest.fixture
def ball_problem(plane):
    """Projected problem whose reformulated operator is the constant (-1, 0)."""
    S = AffineOperator(plane, matrix=0.5 * np.eye(2), offset=[0.5, 0.0])
    return VipProblem(S=S, gamma=2.0, set=Ball(center=[0.0, 0.0], radius=1.0))


@pytest.fixture
def run_cli(capsys):
    """Run the CLI in-process; returns (exit_code, parsed_stdout, stderr).

    stdout is parsed as JSON when possible (the summary case); otherwise the
    raw text comes back (e.g. argparse help).
    """

    def run(argv):
        code = cli_main(argv)
        captured = capsys.readouterr()
        if captured.out.strip():
            try:
                payload = json.loads(captured.out)
            except json.JSONDecodeError:
                payload = captured.out
        else:
            payload = None
        return code, payload, captured.err

    return run
