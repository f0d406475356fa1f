from __future__ import annotations

import os
import sys

import pytest

sys.path.append(
    os.path.join(os.path.dirname(os.path.realpath(__file__)), "../")
)

import math
from typing import Dict

import numpy as np

from pysei.metrics import Metrics
from pysei.problems import DuffingParams, Problems
from pysei.reference import Reference
from pysei.trajectory import Trajectory


class TestMetrics:
    @pytest.fixture(scope="module")
    def test_data(self: TestMetrics) -> Dict:
        """
        This immutable fixture stores the expected results of unit tests
        """
        p = Problems.duffing(DuffingParams())
        h = 1 / 10
        t = h * np.arange(201)
        return {
            "problem": p,
            "exact_traj": Trajectory(
                t, [p.exact(float(tn)) for tn in t], h, "exact", "duffing"
            ),
            "delta": 0.25,
            "halving_errors": [1e-2, 2.5e-3, 6.25e-4],
            "halving_slopes": [2.0, 2.0],
            "fourth_order_errors": [1e-4, 6.25e-6],
            "fourth_order_slope": 4.0,
        }

    def test_global_error(self: TestMetrics, test_data: Dict) -> None:
        p = test_data["problem"]
        traj = test_data["exact_traj"]
        assert Metrics.global_error(traj, p.exact) == 0.0

        shifted = Trajectory(
            traj.t,
            traj.y + np.array([0.0, test_data["delta"]]),
            traj.h,
            "shifted",
            "duffing",
        )
        assert Metrics.global_error(shifted, p.exact) == pytest.approx(
            test_data["delta"], abs=1e-12
        )

    def test_global_error_needs_reference(
        self: TestMetrics, test_data: Dict
    ) -> None:
        with pytest.raises(Reference.Unavailable):
            Metrics.global_error(test_data["exact_traj"], None)

    def test_energy_error(self: TestMetrics, test_data: Dict) -> None:
        p = test_data["problem"]
        traj = test_data["exact_traj"]
        assert Metrics.energy_error(traj, p.energy) <= 1e-10

        y = np.array(traj.y)
        y[57, 0] += 0.01
        perturbed = Trajectory(traj.t, y, traj.h, "perturbed", "duffing")
        expected = abs(p.energy(y[57]) - p.energy(y[0]))
        assert Metrics.energy_error(perturbed, p.energy) == pytest.approx(
            expected, abs=1e-10
        )

    def test_estimate_order(self: TestMetrics, test_data: Dict) -> None:
        assert Metrics.estimate_order(
            test_data["halving_errors"]
        ) == pytest.approx(test_data["halving_slopes"], abs=1e-12)
        assert Metrics.estimate_order(
            test_data["fourth_order_errors"]
        ) == pytest.approx([test_data["fourth_order_slope"]], abs=1e-12)
        assert Metrics.estimate_order(
            [9e-2, 1e-2], hs=[0.3, 0.1]
        ) == pytest.approx([2.0], abs=1e-12)

    def test_estimate_order_excludes_roundoff(self: TestMetrics) -> None:
        assert Metrics.estimate_order([1e-8, 5e-13, 1e-13]) == []
        assert Metrics.estimate_order([1e-6, 1.25e-7, 5e-13]) == pytest.approx(
            [3.0], abs=1e-12
        )
        assert Metrics.estimate_order([math.inf, 1e-3, 2.5e-4]) == (
            pytest.approx([2.0], abs=1e-12)
        )
        assert Metrics.estimate_order([1e-3]) == []
        with pytest.raises(ValueError):
            Metrics.estimate_order([1e-3, 1e-4], hs=[0.1])
