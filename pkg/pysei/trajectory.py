from __future__ import annotations

import csv
import logging
from typing import Optional

import numpy as np
import numpy.typing as npt

from .problem import SemilinearProblem
from .settings import Settings

logger = logging.getLogger(__name__)


class Trajectory:
    """
    States y_n on the fixed grid t_n = t0 + n h produced by one integration
    """

    def __init__(
        self: Trajectory,
        t: npt.ArrayLike,
        y: npt.ArrayLike,
        h: float,
        method_name: str,
        problem_label: str,
        fp_iters: Optional[list[int]] = None,
    ) -> None:
        self.t: npt.NDArray[np.float64] = np.array(t, dtype=np.float64)
        self.y: npt.NDArray[np.float64] = np.array(y, dtype=np.float64)
        self.h: float = float(h)
        self.method_name: str = method_name
        self.problem_label: str = problem_label
        self.fp_iters: list[int] = fp_iters if fp_iters is not None else []

        if self.y.ndim != 2 or self.y.shape[0] != self.t.shape[0]:
            raise ValueError(
                f"Need one state per grid point, got {self.t.shape[0]} times "
                f"and states of shape {self.y.shape}"
            )
        if len(self.t) > 1:
            steps = np.diff(self.t)
            if not np.all(steps > 0.0) or np.max(
                np.abs(steps - self.h)
            ) > Settings.GRID_TOL * max(1.0, abs(self.t[-1])):
                raise ValueError(
                    f"Time grid must increase with constant spacing {h}"
                )

    def __len__(self: Trajectory) -> int:
        return int(self.t.shape[0])

    def __str__(self: Trajectory) -> str:
        return (
            f"Trajectory({self.method_name} on {self.problem_label}, "
            f"h={self.h}, {self.n_steps} steps)"
        )

    @property
    def n_steps(self: Trajectory) -> int:
        return len(self) - 1

    @property
    def t_end(self: Trajectory) -> float:
        return float(self.t[-1])

    def mean_fp_iters(self: Trajectory) -> float:
        """
        Mean number of stage iterations per step

        :rtype: float
        """
        if not self.fp_iters:
            return 0.0
        return float(np.mean(self.fp_iters))

    def to_csv_file(
        self: Trajectory,
        filename: str,
        problem: Optional[SemilinearProblem] = None,
    ) -> None:
        """
        Write the trajectory as CSV with columns t, y_1..y_d and H when the
        problem has an invariant

        :param str filename: Output CSV filename
        :param SemilinearProblem problem: Provides H for the last column
        :rtype: None
        """
        fmt = Settings.CSV_FLOAT_FORMAT.format
        with_H = problem is not None and problem.invariant_H is not None
        header = ["t"] + [f"y_{i + 1}" for i in range(self.y.shape[1])]
        if with_H:
            header.append("H")
        try:
            with open(filename, "w", newline="") as csv_file:
                writer = csv.writer(csv_file)
                writer.writerow(header)
                for t_n, y_n in zip(self.t, self.y):
                    row = [fmt(t_n)] + [fmt(v) for v in y_n]
                    if with_H and problem is not None:
                        row.append(fmt(problem.energy(y_n)))
                    writer.writerow(row)
        except Exception as e:
            logger.error(
                f"{__name__}: Couldn't write trajectory file {filename}"
            )
            raise e
