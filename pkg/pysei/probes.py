from __future__ import annotations

import numpy as np

from .problem import SemilinearProblem, State
from .settings import Settings
from .stepper import Stepper


class Probes:
    """
    Operational checks of symmetry and symplecticity on a step map
    """

    @staticmethod
    def round_trip_defect(
        stepper: Stepper, p: SemilinearProblem, y0: State, h: float
    ) -> float:
        """
        Step with h, then with -h from the result; return |y_back - y0|_inf

        :param Stepper stepper: Step map, kernels for h and -h built apart
        :param SemilinearProblem p: Problem
        :param ndarray y0: Start state
        :param float h: Step size
        :rtype: float
        """
        y1 = stepper(p, y0, h).y
        y_back = stepper(p, y1, -h).y
        return float(np.max(np.abs(y_back - y0)))

    @staticmethod
    def step_jacobian(
        stepper: Stepper,
        p: SemilinearProblem,
        y0: State,
        h: float,
        eps: float = Settings.JACOBIAN_EPS,
    ) -> np.ndarray:
        """
        Central difference Jacobian of the one-step map at y0

        :rtype: ndarray
        """
        D = np.empty((p.d, p.d))
        for j in range(p.d):
            e = np.zeros(p.d)
            e[j] = eps
            D[:, j] = (stepper(p, y0 + e, h).y - stepper(p, y0 - e, h).y) / (
                2.0 * eps
            )
        return D

    @staticmethod
    def jacobian_symplecticity_defect(
        stepper: Stepper,
        p: SemilinearProblem,
        y0: State,
        h: float,
        eps: float = Settings.JACOBIAN_EPS,
    ) -> float:
        """
        Return |D^T J D - J|_inf for the finite difference step Jacobian D

        :raises ValueError: If the problem has no symplectic structure
        :rtype: float
        """
        if p.J is None:
            raise ValueError(f"Problem {p} has no symplectic structure J")
        D = Probes.step_jacobian(stepper, p, y0, h, eps)
        J = p.J.entries
        return float(np.max(np.sum(np.abs(D.T @ J @ D - J), axis=1)))
