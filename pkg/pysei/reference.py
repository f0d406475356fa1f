from __future__ import annotations

from typing import Optional

import numpy as np

from .catalog import Catalog
from .integrator import Integrator
from .logs import Loggable
from .problem import ExactSolution, SemilinearProblem, State
from .settings import Settings
from .stepper import SolverSettings, Stepper
from .trajectory import Trajectory


class Reference(Loggable):
    """
    A validated numeric reference solution, evaluable on its own time grid
    """

    log_prefix: str = __name__

    class Unavailable(ValueError):
        """The problem has no closed form solution."""

    class Untrusted(Exception):
        """The two reference tiers disagree."""

        def __init__(
            self: Reference.Untrusted, label: str, disagreement: float
        ) -> None:
            self.message: str = (
                f"Reference for {label} untrusted, tiers disagree by "
                f"{disagreement:.3e} > {Settings.REFERENCE_TOL:.0e}"
            )
            super().__init__(self.message)

    def __init__(
        self: Reference, trajectory: Trajectory, disagreement: float = 0.0
    ) -> None:
        self.trajectory: Trajectory = trajectory
        self.disagreement: float = disagreement

    def __call__(self: Reference, t: float) -> State:
        """
        Return the reference state at grid time t

        :param float t: Time on the reference grid
        :raises ValueError: If t is off the grid or outside its range
        :rtype: ndarray
        """
        traj = self.trajectory
        index = int(round((t - traj.t[0]) / traj.h))
        if (
            not 0 <= index < len(traj)
            or abs(traj.t[index] - t) > Settings.GRID_TOL
        ):
            raise ValueError(
                f"Time {t} is not on the reference grid of spacing {traj.h} "
                f"over [{traj.t[0]}, {traj.t[-1]}]"
            )
        return traj.y[index]

    def covers(self: Reference, h: float) -> bool:
        """
        Whether every grid point of step size h up to the reference's final
        time lies on the reference grid

        :param float h: Step size
        :rtype: bool
        """
        traj = self.trajectory
        stride = round(h / traj.h)
        if stride < 1:
            return False
        steps = round((traj.t_end - traj.t[0]) / h)
        return abs(steps * (h - stride * traj.h)) <= Settings.GRID_TOL

    @staticmethod
    def numeric_reference(
        p: SemilinearProblem,
        h_target: float,
        t_end: float,
        refinement: int = Settings.REFERENCE_REFINEMENT,
        settings: Optional[SolverSettings] = None,
    ) -> Reference:
        """
        Integrate p with the reference method at h_ref = h_target / refinement
        and again at h_ref / 2; accept when the runs agree to REFERENCE_TOL on
        the shared grid.

        The returned reference can be evaluated at every multiple of h_ref,
        so at every grid point of step sizes h_ref divides.

        :param SemilinearProblem p: Problem
        :param float h_target: Smallest step size the reference must serve
        :param float t_end: Final time
        :param int refinement: Ratio h_target / h_ref
        :param SolverSettings settings: Stage solver controls
        :raises Untrusted: If the tiers disagree above REFERENCE_TOL
        :rtype: Reference
        """
        if refinement < 1:
            raise ValueError(f"refinement must be >= 1, not {refinement}")
        stepper = Stepper(
            Catalog.get_method(Settings.REFERENCE_METHOD), settings
        )
        h_ref = h_target / refinement
        coarse = Integrator.integrate(stepper, p, p.y0, h_ref, t_end)
        fine = Integrator.integrate(stepper, p, p.y0, h_ref / 2.0, t_end)

        disagreement = float(
            np.max(np.linalg.norm(coarse.y - fine.y[::2], axis=1))
        )
        reference = Reference(coarse, disagreement)
        reference._log(
            level=Settings.LOG_DEBUG,
            msg=f"Reference for {p} at h_ref={h_ref} over [{p.t0}, {t_end}]: "
            f"tiers disagree by {disagreement:.3e}",
        )
        if disagreement > Settings.REFERENCE_TOL:
            raise Reference.Untrusted(p.label, disagreement)
        return reference

    @staticmethod
    def for_problem(
        p: SemilinearProblem,
        h_target: float,
        t_end: float,
        refinement: int = Settings.REFERENCE_REFINEMENT,
        settings: Optional[SolverSettings] = None,
    ) -> ExactSolution:
        """
        Return the exact solution when the problem has one, else a validated
        numeric reference

        :rtype: Callable
        """
        if p.exact is not None:
            return p.exact
        return Reference.numeric_reference(
            p, h_target, t_end, refinement=refinement, settings=settings
        )
