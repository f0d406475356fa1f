from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .problem import ExactSolution, Invariant
from .reference import Reference
from .settings import Settings
from .trajectory import Trajectory


class Metrics:
    """
    Error measures over trajectories
    """

    @staticmethod
    def global_error(
        traj: Trajectory, reference: Optional[ExactSolution]
    ) -> float:
        """
        GE: max over grid points of the 2-norm of y_n - reference(t_n)

        :param Trajectory traj: Numerical trajectory
        :param Callable reference: Exact or numeric reference, time -> state
        :raises Reference.Unavailable: If no reference is given
        :rtype: float
        """
        if reference is None:
            raise Reference.Unavailable(
                f"No reference for {traj.problem_label}, build one with "
                f"Reference.numeric_reference"
            )
        ref = np.array([reference(float(t)) for t in traj.t])
        return float(np.max(np.linalg.norm(traj.y - ref, axis=1)))

    @staticmethod
    def energy_error(traj: Trajectory, H: Invariant) -> float:
        """
        GEH: max over n of |H(y_n) - H(y_0)|

        :param Trajectory traj: Numerical trajectory
        :param Callable H: Invariant, state -> float
        :rtype: float
        """
        H0 = H(traj.y[0])
        return float(max(abs(H(y) - H0) for y in traj.y))

    @staticmethod
    def estimate_order(
        errors: list[float], hs: Optional[list[float]] = None
    ) -> list[float]:
        """
        Observed orders log(GE_i / GE_i+1) / log(h_i / h_i+1) for consecutive
        pairs; log2 of the error ratio when hs is omitted (halving). Pairs
        with an error below ROUNDOFF_FLOOR or non-finite are left out.

        :param List errors: GE per step size, coarsest first
        :param List hs: Step sizes matching errors
        :rtype: List
        """
        if hs is not None and len(hs) != len(errors):
            raise ValueError("errors and hs must have the same length")
        slopes: list[float] = []
        for i in range(len(errors) - 1):
            e0, e1 = errors[i], errors[i + 1]
            if not (math.isfinite(e0) and math.isfinite(e1)):
                continue
            if min(e0, e1) < Settings.ROUNDOFF_FLOOR:
                continue
            ratio = 2.0 if hs is None else hs[i] / hs[i + 1]
            slopes.append(math.log(e0 / e1) / math.log(ratio))
        return slopes
