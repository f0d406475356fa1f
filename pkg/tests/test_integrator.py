from __future__ import annotations

import os
import sys

import pytest

sys.path.append(
    os.path.join(os.path.dirname(os.path.realpath(__file__)), "../")
)

import csv
from pathlib import Path
from typing import Dict

import numpy as np
from fixtures import builtin, duffing

from pysei.catalog import Catalog
from pysei.integrator import Integrator
from pysei.matfun import SquareMatrix
from pysei.problem import SemilinearProblem, State
from pysei.problems import DuffingParams, Problems
from pysei.stepper import SolverSettings, Stepper
from pysei.trajectory import Trajectory


def no_force(y: State) -> State:
    return np.zeros_like(y)


class TestIntegrator:
    @pytest.fixture(scope="module")
    def test_data(self: TestIntegrator) -> Dict:
        """
        This immutable fixture stores the expected results of unit tests
        """
        p = Problems.duffing(DuffingParams())
        return {
            "duffing": p,
            "linear": SemilinearProblem("linear", p.M, no_force, p.y0),
            "h": 1 / 8,
            "t_end": duffing["t_end"],
            "n_steps": 160,
            "exact_linear_tol": 1e-11,
        }

    def test_step_count(self: TestIntegrator) -> None:
        assert Integrator.step_count(0.0, 20.0, 1 / 8) == 160
        assert Integrator.step_count(0.0, 1000.0, 1 / 10) == 10000
        assert Integrator.step_count(1.0, 2.0, 1 / 64) == 64
        with pytest.raises(ValueError):
            Integrator.step_count(0.0, 1.0, 0.3)
        with pytest.raises(ValueError):
            Integrator.step_count(0.0, 1.0, 0.0)
        with pytest.raises(ValueError):
            Integrator.step_count(0.0, 1.0, -0.5)
        with pytest.raises(ValueError):
            Integrator.step_count(1.0, 1.0, 0.5)

    def test_integrate(self: TestIntegrator, test_data: Dict) -> None:
        p = test_data["duffing"]
        stepper = Stepper(Catalog.get_method("SSSEI1s2"))
        traj = Integrator.integrate(
            stepper, p, p.y0, test_data["h"], test_data["t_end"]
        )
        assert len(traj) == test_data["n_steps"] + 1
        assert traj.n_steps == test_data["n_steps"]
        assert abs(traj.n_steps * traj.h - test_data["t_end"]) <= 1e-9
        assert traj.t_end == pytest.approx(test_data["t_end"], abs=1e-9)
        assert list(traj.y[0]) == list(p.y0)
        assert traj.method_name == "SSSEI1s2"
        assert traj.problem_label == "duffing"
        assert len(traj.fp_iters) == test_data["n_steps"]
        assert traj.mean_fp_iters() >= 1.0

    def test_exact_on_linear_problem(
        self: TestIntegrator, test_data: Dict
    ) -> None:
        p = test_data["linear"]
        for name in builtin["sei"]:
            traj = Integrator.integrate(
                Stepper(Catalog.get_method(name)),
                p,
                p.y0,
                test_data["h"],
                test_data["t_end"],
            )
            for n in (1, 80, 160):
                expected = (p.M * float(traj.t[n])).expm().mat_vec(p.y0)
                scale = max(1.0, float(np.max(np.abs(expected))))
                assert (
                    np.max(np.abs(traj.y[n] - expected))
                    <= test_data["exact_linear_tol"] * scale
                )

    def test_step_index_on_failure(
        self: TestIntegrator, test_data: Dict
    ) -> None:
        p = test_data["duffing"]
        stepper = Stepper(
            Catalog.get_method("SSSEI1s2"), SolverSettings(max_iters=1)
        )
        with pytest.raises(Stepper.NonConvergence) as e:
            Integrator.integrate(stepper, p, p.y0, test_data["h"], 1.0)
        assert e.value.step_index == 0
        assert "at step 0" in str(e.value)


class TestTrajectory:
    @pytest.fixture(scope="module")
    def test_data(self: TestTrajectory) -> Dict:
        """
        This immutable fixture stores the expected results of unit tests
        """
        return {
            "t": [0.0, 0.5, 1.0],
            "y": [[0.0, 1.0], [0.5, 0.5], [1.0, 0.0]],
            "header": ["t", "y_1", "y_2", "H"],
        }

    def test_grid_validation(self: TestTrajectory, test_data: Dict) -> None:
        with pytest.raises(ValueError):
            Trajectory([0.0, 0.5, 1.2], test_data["y"], 0.5, "m", "p")
        with pytest.raises(ValueError):
            Trajectory([0.0, 0.5], test_data["y"], 0.5, "m", "p")
        traj = Trajectory(test_data["t"], test_data["y"], 0.5, "m", "p")
        assert traj.n_steps == 2
        assert traj.mean_fp_iters() == 0.0
        assert "m on p" in str(traj)

    def test_to_csv_file(
        self: TestTrajectory, test_data: Dict, tmp_path: Path
    ) -> None:
        p = SemilinearProblem(
            "toy",
            SquareMatrix.zeros(2),
            no_force,
            [0.0, 1.0],
            invariant_H=lambda y: float(y[0] + y[1]),
        )
        traj = Trajectory(test_data["t"], test_data["y"], 0.5, "m", "toy")
        filename = str(tmp_path / "traj.csv")
        traj.to_csv_file(filename, problem=p)
        rows = list(csv.reader(open(filename)))
        assert rows[0] == test_data["header"]
        assert len(rows) == 4
        assert rows[2] == ["0.5", "0.5", "0.5", "1"]

        traj.to_csv_file(filename)
        rows = list(csv.reader(open(filename)))
        assert rows[0] == test_data["header"][:3]
