from __future__ import annotations

from typing import NamedTuple, Optional

import numpy as np
import numpy.typing as npt

from .logs import Loggable
from .matfun import SquareMatrix
from .problem import SemilinearProblem, State
from .settings import Settings
from .tableau import RKTableau, SEIMethod


class SolverSettings:
    """
    Controls for the fixed-point stage solver
    """

    def __init__(
        self: SolverSettings,
        fp_tol: float = Settings.FP_TOL,
        max_iters: int = Settings.MAX_ITERS,
    ) -> None:
        if not fp_tol > 0.0:
            raise ValueError(f"fp_tol must be positive, not {fp_tol}")
        if type(max_iters) != int or max_iters < 1:
            raise ValueError(f"max_iters must be an int >= 1, not {max_iters}")
        self.fp_tol: float = float(fp_tol)
        self.max_iters: int = max_iters

    def __str__(self: SolverSettings) -> str:
        return f"fp_tol={self.fp_tol},max_iters={self.max_iters}"


class StepResult(NamedTuple):
    y: State
    iterations: int


class StepKernel:
    """
    The frozen matrices of one step of size h for a given (method, M).

    Every supported one-step map is written as

        Y_i = G_i y0 + h sum_j C_ij f(Y_j)
        y1  = P y0 + h sum_i W_i f(Y_i)

    For an SEI, G_i = e^{c_i hM}, C_ij = abar_ij(hM), W_i = bbar_i(hM) and
    P = e^{hM}. For classical RK on My + f(y) the linear part of the stage
    system is solved exactly, giving G, C, W and P from (I - h A(x)M)^-1.
    """

    def __init__(
        self: StepKernel,
        method_name: str,
        h: float,
        stage_maps: npt.NDArray[np.float64],
        coupling: npt.NDArray[np.float64],
        weights: npt.NDArray[np.float64],
        propagator: npt.NDArray[np.float64],
    ) -> None:
        self.method_name: str = method_name
        self.h: float = float(h)
        self.s: int = int(stage_maps.shape[0])
        self.d: int = int(stage_maps.shape[1])
        if coupling.shape != (self.s, self.s, self.d, self.d):
            raise ValueError(f"coupling has shape {coupling.shape}")
        if weights.shape != (self.s, self.d, self.d):
            raise ValueError(f"weights has shape {weights.shape}")
        if propagator.shape != (self.d, self.d):
            raise ValueError(f"propagator has shape {propagator.shape}")
        for arr in (stage_maps, coupling, weights, propagator):
            arr.setflags(write=False)
        self.stage_maps: npt.NDArray[np.float64] = stage_maps
        self.coupling: npt.NDArray[np.float64] = coupling
        self.weights: npt.NDArray[np.float64] = weights
        self.propagator: npt.NDArray[np.float64] = propagator

    def __eq__(self: StepKernel, other: object) -> bool:
        if not isinstance(other, StepKernel):
            return NotImplemented
        return (
            self.method_name == other.method_name
            and self.h == other.h
            and np.array_equal(self.stage_maps, other.stage_maps)
            and np.array_equal(self.coupling, other.coupling)
            and np.array_equal(self.weights, other.weights)
            and np.array_equal(self.propagator, other.propagator)
        )

    __hash__ = None  # type: ignore[assignment]

    def __str__(self: StepKernel) -> str:
        return f"StepKernel({self.method_name}, h={self.h}, s={self.s})"


class Stepper(Loggable):
    """
    One-step map of a method, with its step kernels cached per (M, h)
    """

    log_prefix: str = __name__

    class NonConvergence(Exception):
        """The stage fixed-point iteration didn't reach fp_tol."""

        def __init__(
            self: Stepper.NonConvergence,
            method_name: str,
            defect: float,
            iterations: int,
            step_index: Optional[int] = None,
        ) -> None:
            self.method_name: str = method_name
            self.defect: float = defect
            self.iterations: int = iterations
            self.step_index: Optional[int] = step_index
            super().__init__(str(self))

        def __str__(self: Stepper.NonConvergence) -> str:
            where = (
                f" at step {self.step_index}"
                if self.step_index is not None
                else ""
            )
            return (
                f"{self.method_name} stage iteration didn't converge{where}: "
                f"relative defect {self.defect:.3e} after {self.iterations} "
                f"iterations, reduce h"
            )

    def __init__(
        self: Stepper,
        method: SEIMethod,
        settings: Optional[SolverSettings] = None,
    ) -> None:
        self.method: SEIMethod = method
        self.settings: SolverSettings = settings or SolverSettings()
        self.kernels: dict[tuple[float, bytes], StepKernel] = {}

    def __call__(
        self: Stepper, problem: SemilinearProblem, y0: State, h: float
    ) -> StepResult:
        """
        Advance y0 by one step of size h

        :param SemilinearProblem problem: Problem being integrated
        :param ndarray y0: Current state
        :param float h: Step size, may be negative
        :rtype: StepResult
        """
        return Stepper.advance(
            self.kernel(problem.M, h), problem, y0, self.settings
        )

    def __str__(self: Stepper) -> str:
        return f"Stepper({self.method}, {self.settings})"

    def kernel(self: Stepper, M: SquareMatrix, h: float) -> StepKernel:
        """
        Return the kernel for (M, h), building it on first use. At most
        KERNEL_CACHE_SIZE kernels are kept, the oldest is dropped first.

        :param SquareMatrix M: Linear part
        :param float h: Step size
        :rtype: StepKernel
        """
        key = (float(h), M.entries.tobytes())
        if key not in self.kernels:
            if len(self.kernels) >= Settings.KERNEL_CACHE_SIZE:
                del self.kernels[next(iter(self.kernels))]
            if self.method.classical:
                self.kernels[key] = Stepper.precompute_rk(
                    self.method.tableau, M, h, name=self.method.name
                )
            else:
                self.kernels[key] = Stepper.precompute(self.method, M, h)
            self._log(
                level=Settings.LOG_DEV,
                msg=f"Built {self.kernels[key]} ({len(self.kernels)} cached)",
            )
        return self.kernels[key]

    @staticmethod
    def precompute(m: SEIMethod, M: SquareMatrix, h: float) -> StepKernel:
        """
        Return the SEI kernel e^{c_i hM}, abar_ij(hM), bbar_i(hM), e^{hM}

        :param SEIMethod m: Method
        :param SquareMatrix M: Linear part
        :param float h: Step size, nonzero
        :raises ValueError: If h is zero
        :rtype: StepKernel
        """
        if h == 0.0:
            raise ValueError("Step size h must be nonzero")
        hM = M * h
        s = m.s
        c = m.tableau.c
        stage_maps = np.array([(hM * c[i]).expm().entries for i in range(s)])
        coupling = np.array(
            [[m.sei_abar(i, j, hM).entries for j in range(s)] for i in range(s)]
        )
        weights = np.array([m.sei_bbar(i, hM).entries for i in range(s)])
        return StepKernel(
            method_name=m.name,
            h=h,
            stage_maps=stage_maps,
            coupling=coupling,
            weights=weights,
            propagator=np.array(hM.expm().entries),
        )

    @staticmethod
    def precompute_rk(
        t: RKTableau, M: SquareMatrix, h: float, name: str = "RK"
    ) -> StepKernel:
        """
        Return the kernel of the classical RK method applied to My + f(y).

        With L = I - h (A kron M) and Q = L^-1 (A kron I), the stage system
        becomes Y = L^-1 (1 kron y0) + h Q F, and substituting Y into
        y1 = y0 + h sum_i b_i (M Y_i + f(Y_i)) gives the propagator and
        weights.

        :param RKTableau t: Tableau
        :param SquareMatrix M: Linear part
        :param float h: Step size, nonzero
        :param str name: Method name recorded on the kernel
        :raises ValueError: If h is zero or L is singular
        :rtype: StepKernel
        """
        if h == 0.0:
            raise ValueError("Step size h must be nonzero")
        s, d = t.s, M.d
        Mx = M.entries
        L = np.eye(s * d) - h * np.kron(t.A, Mx)
        try:
            L_inv = np.linalg.inv(L)
        except np.linalg.LinAlgError as e:
            raise ValueError(
                f"Stage matrix of {name} is singular at h={h}"
            ) from e
        Q = L_inv @ np.kron(t.A, np.eye(d))

        blocks = L_inv.reshape(s, d, s, d).transpose(0, 2, 1, 3)
        stage_maps = blocks.sum(axis=1)
        coupling = np.ascontiguousarray(
            Q.reshape(s, d, s, d).transpose(0, 2, 1, 3)
        )

        propagator = np.eye(d) + h * np.einsum(
            "i,kl,ilm->km", t.b, Mx, stage_maps
        )
        weights = np.array(
            [
                t.b[j] * np.eye(d)
                + h * np.einsum("i,kl,ilm->km", t.b, Mx, coupling[:, j])
                for j in range(s)
            ]
        )
        return StepKernel(
            method_name=name,
            h=h,
            stage_maps=np.ascontiguousarray(stage_maps),
            coupling=coupling,
            weights=weights,
            propagator=propagator,
        )

    @staticmethod
    def advance(
        kernel: StepKernel,
        p: SemilinearProblem,
        y0: State,
        settings: SolverSettings,
    ) -> StepResult:
        """
        Solve the stage system by fixed-point iteration seeded with G_i y0,
        then form y1.

        Iteration stops once the inf-norm change of the concatenated stage
        vector is below fp_tol times its norm (or FP_ABS_FLOOR).

        :param StepKernel kernel: Kernel for the step size
        :param SemilinearProblem p: Problem providing f
        :param ndarray y0: Current state
        :param SolverSettings settings: Stage solver controls
        :raises NonConvergence: If max_iters is reached or iterates blow up
        :rtype: StepResult
        """
        h = kernel.h
        f = p.f
        s = kernel.s
        base = kernel.stage_maps @ y0
        Y = base
        defect = np.inf
        for iteration in range(1, settings.max_iters + 1):
            F = np.array([f(Y[i]) for i in range(s)])
            Y_new = base + h * np.einsum("ijkl,jl->ik", kernel.coupling, F)
            change = float(np.max(np.abs(Y_new - Y)))
            scale = float(np.max(np.abs(Y_new)))
            Y = Y_new
            if not np.isfinite(change):
                raise Stepper.NonConvergence(
                    kernel.method_name, np.inf, iteration
                )
            if change <= max(settings.fp_tol * scale, Settings.FP_ABS_FLOOR):
                break
            defect = change / scale if scale > 0.0 else change
        else:
            raise Stepper.NonConvergence(
                kernel.method_name, defect, settings.max_iters
            )

        F = np.array([f(Y[i]) for i in range(s)])
        y1 = kernel.propagator @ y0 + h * np.einsum(
            "ijk,ik->j", kernel.weights, F
        )
        return StepResult(y=y1, iterations=iteration)

    @staticmethod
    def ei_step(
        kernel: StepKernel,
        p: SemilinearProblem,
        y0: State,
        h: float,
        settings: SolverSettings,
    ) -> State:
        """
        One step of the exponential integrator

        :param StepKernel kernel: Kernel built for (method, p.M, h)
        :param SemilinearProblem p: Problem
        :param ndarray y0: Current state
        :param float h: Step size the kernel was built for
        :param SolverSettings settings: Stage solver controls
        :raises ValueError: If the kernel was built for another h
        :rtype: ndarray
        """
        if kernel.h != h:
            raise ValueError(f"{kernel} was built for h={kernel.h}, not {h}")
        return Stepper.advance(kernel, p, y0, settings).y

    @staticmethod
    def rk_step(
        t: RKTableau,
        p: SemilinearProblem,
        y0: State,
        h: float,
        settings: SolverSettings,
    ) -> State:
        """
        One step of the classical RK method on y' = My + f(y)

        :param RKTableau t: Tableau
        :param SemilinearProblem p: Problem
        :param ndarray y0: Current state
        :param float h: Step size, nonzero
        :param SolverSettings settings: Stage solver controls
        :rtype: ndarray
        """
        kernel = Stepper.precompute_rk(t, p.M, h)
        return Stepper.advance(kernel, p, y0, settings).y
