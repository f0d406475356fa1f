from __future__ import annotations

import logging
from typing import Protocol

import numpy as np

from .problem import SemilinearProblem, State
from .settings import Settings
from .stepper import Stepper, StepResult
from .trajectory import Trajectory

logger = logging.getLogger(__name__)


class StepMap(Protocol):
    def __call__(
        self, problem: SemilinearProblem, y0: State, h: float
    ) -> StepResult:
        ...


class Integrator:
    """
    Fixed-step integration loop
    """

    log_prefix: str = __name__

    @staticmethod
    def step_count(t0: float, t_end: float, h: float) -> int:
        """
        Return N = (t_end - t0) / h, which must be a positive integer

        :param float t0: Initial time
        :param float t_end: Final time
        :param float h: Step size
        :raises ValueError: If N is not a positive integer within GRID_TOL
        :rtype: int
        """
        if h <= 0.0:
            raise ValueError(f"Step size must be positive, not {h}")
        ratio = (t_end - t0) / h
        n_steps = int(round(ratio))
        if n_steps < 1 or abs(ratio - n_steps) > Settings.GRID_TOL * max(
            1.0, ratio
        ):
            raise ValueError(
                f"(t_end - t0) / h = {ratio} is not a positive integer for "
                f"t0={t0}, t_end={t_end}, h={h}"
            )
        return n_steps

    @staticmethod
    def integrate(
        step_map: StepMap,
        p: SemilinearProblem,
        y0: State,
        h: float,
        t_end: float,
    ) -> Trajectory:
        """
        Apply step_map N = (t_end - t0) / h times starting from y0 at p.t0

        :param StepMap step_map: One-step map, e.g. a Stepper
        :param SemilinearProblem p: Problem
        :param ndarray y0: Initial state
        :param float h: Step size
        :param float t_end: Final time
        :raises NonConvergence: Carrying the index of the failing step
        :rtype: Trajectory
        """
        n_steps = Integrator.step_count(p.t0, t_end, h)
        ys = np.empty((n_steps + 1, p.d))
        ys[0] = y0
        fp_iters: list[int] = []
        y = np.array(y0, dtype=np.float64)
        for n in range(n_steps):
            try:
                result = step_map(p, y, h)
            except Stepper.NonConvergence as e:
                e.step_index = n
                logger.warning(f"{Integrator.log_prefix}: {e}")
                raise e
            y = result.y
            ys[n + 1] = y
            fp_iters.append(result.iterations)

        method_name = str(getattr(step_map, "method", step_map))
        logger.debug(
            f"{Integrator.log_prefix}: {method_name} on {p} h={h} "
            f"took {n_steps} steps, {sum(fp_iters)} stage iterations"
        )
        return Trajectory(
            t=p.t0 + h * np.arange(n_steps + 1),
            y=ys,
            h=h,
            method_name=method_name,
            problem_label=p.label,
            fp_iters=fp_iters,
        )
