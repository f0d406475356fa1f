from __future__ import annotations

from typing import Callable, Optional

import numpy as np
import numpy.typing as npt

from .matfun import SquareMatrix

State = npt.NDArray[np.float64]
Nonlinearity = Callable[[State], State]
Invariant = Callable[[State], float]
ExactSolution = Callable[[float], State]


class SemilinearProblem:
    """
    An initial value problem y' = My + f(y), y(t0) = y0, with optional
    first integral H, closed form solution and symplectic structure J
    """

    def __init__(
        self: SemilinearProblem,
        label: str,
        M: SquareMatrix,
        f: Nonlinearity,
        y0: npt.ArrayLike,
        t0: float = 0.0,
        invariant_H: Optional[Invariant] = None,
        exact: Optional[ExactSolution] = None,
        J: Optional[SquareMatrix] = None,
    ) -> None:
        """
        Init a new problem

        :param str label: Problem identifier, e.g. duffing
        :param SquareMatrix M: Linear part
        :param Callable f: Nonlinearity, state -> state
        :param ArrayLike y0: Initial state of length M.d
        :param float t0: Initial time
        :param Callable invariant_H: Energy or first integral, state -> float
        :param Callable exact: Exact solution, time -> state
        :param SquareMatrix J: Antisymmetric invertible structure matrix
        :rtype: None
        """
        if not label:
            raise ValueError("Label required to create a problem")
        self.label: str = str(label)

        if not isinstance(M, SquareMatrix):
            raise TypeError(f"M must be SquareMatrix, not {type(M)}")
        self.M: SquareMatrix = M
        self.d: int = M.d

        self.y0: State = np.array(y0, dtype=np.float64)
        if self.y0.shape != (self.d,):
            raise ValueError(
                f"y0 must have {self.d} entries, not shape {self.y0.shape}"
            )
        self.y0.setflags(write=False)
        self.t0: float = float(t0)

        self.f: Nonlinearity = f
        self.invariant_H: Optional[Invariant] = invariant_H
        self.exact: Optional[ExactSolution] = exact

        if J is not None:
            if J.d != self.d or self.d % 2:
                raise ValueError(
                    f"J must be {self.d}x{self.d} with even dimension"
                )
            if not J.is_antisymmetric():
                raise ValueError(f"J must be antisymmetric: {J}")
            if J.det() == 0.0:
                raise ValueError(f"J must be invertible: {J}")
        self.J: Optional[SquareMatrix] = J

    def __repr__(self: SemilinearProblem) -> str:
        return self.__str__()

    def __str__(self: SemilinearProblem) -> str:
        return self.label

    def energy(self: SemilinearProblem, y: State) -> float:
        """
        Evaluate the first integral H at y

        :param ndarray y: State
        :raises ValueError: If the problem has no invariant
        :rtype: float
        """
        if self.invariant_H is None:
            raise ValueError(f"Problem {self.label} has no invariant H")
        return float(self.invariant_H(y))

    def is_hamiltonian(self: SemilinearProblem, tol: float = 0.0) -> bool:
        """
        Does the linear part satisfy M^T J + J M = 0

        :param float tol: Allowed inf-norm defect
        :rtype: bool
        """
        if self.J is None:
            return False
        return self.M.is_hamiltonian(self.J, tol)

    def rhs(self: SemilinearProblem, y: State) -> State:
        """
        Evaluate the full right hand side My + f(y)

        :param ndarray y: State
        :rtype: ndarray
        """
        return self.M.entries @ y + self.f(y)

    def without_linear_part(self: SemilinearProblem) -> SemilinearProblem:
        """
        Return the same problem with M replaced by 0, keeping f and y0

        :rtype: SemilinearProblem
        """
        return SemilinearProblem(
            label=f"{self.label}-pure-f",
            M=SquareMatrix.zeros(self.d),
            f=self.f,
            y0=self.y0,
            t0=self.t0,
        )
