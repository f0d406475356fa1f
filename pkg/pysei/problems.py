from __future__ import annotations

import math
from typing import Any

import numpy as np

from .elliptic import Elliptic
from .matfun import SquareMatrix
from .problem import SemilinearProblem, State


class DuffingParams:
    """
    Duffing equation q'' + (omega^2 + k^2) q = 2 k^2 q^3
    """

    def __init__(
        self: DuffingParams, k: float = 0.07, omega: float = 20.0
    ) -> None:
        self.k: float = float(k)
        self.omega: float = float(omega)
        if not 0.0 <= self.k < self.omega:
            raise ValueError(
                f"Duffing parameters need 0 <= k < omega, not k={k} "
                f"omega={omega}"
            )

    def __str__(self: DuffingParams) -> str:
        return f"k={self.k},omega={self.omega}"

    @property
    def modulus(self: DuffingParams) -> float:
        return self.k / self.omega


class WindParams:
    """
    Averaged wind induced oscillation with magnitude r and phase theta
    """

    def __init__(
        self: WindParams, r: float = 20.0, theta: float = math.pi / 2.0
    ) -> None:
        self.r: float = float(r)
        self.theta: float = float(theta)
        if self.r < 0.0:
            raise ValueError(f"r must be nonnegative, not {r}")
        if not 0.0 <= self.theta <= math.pi / 2.0:
            raise ValueError(f"theta must be in [0, pi/2], not {theta}")

    def __str__(self: WindParams) -> str:
        return f"r={self.r},theta={self.theta!r}"

    @property
    def cos_theta(self: WindParams) -> float:
        # cos(pi/2) is not 0.0 in binary floating point
        if self.theta == math.pi / 2.0:
            return 0.0
        return math.cos(self.theta)

    @property
    def sin_theta(self: WindParams) -> float:
        if self.theta == math.pi / 2.0:
            return 1.0
        return math.sin(self.theta)

    @property
    def zeta(self: WindParams) -> float:
        """Damping factor r cos(theta)"""
        return self.r * self.cos_theta

    @property
    def lam(self: WindParams) -> float:
        """Detuning parameter r sin(theta)"""
        return self.r * self.sin_theta


class Problems:
    """
    The benchmark problems, selectable by label
    """

    LABELS: list[str] = ["duffing", "wind"]

    class UnknownProblem(KeyError):
        """No problem with the requested label."""

        def __init__(self: Problems.UnknownProblem, label: str) -> None:
            self.message: str = (
                f"Unknown problem {label}, expected one of {Problems.LABELS}"
            )
            super().__init__(self.message)

        def __str__(self: Problems.UnknownProblem) -> str:
            return repr(self.message)

    @staticmethod
    def duffing(p: DuffingParams) -> SemilinearProblem:
        """
        Return the Duffing problem q' = p, p' = -(omega^2 + k^2) q + 2 k^2 q^3
        with y0 = (0, omega) and exact solution
        (sn(omega t; k/omega), omega cn(omega t; k/omega) dn(omega t; k/omega))

        :param DuffingParams p: Problem parameters
        :rtype: SemilinearProblem
        """
        k2 = p.k * p.k
        stiffness = p.omega * p.omega + k2
        modulus = p.modulus
        omega = p.omega

        def f(y: State) -> State:
            return np.array([0.0, 2.0 * k2 * y[0] ** 3])

        def H(y: State) -> float:
            q, mom = y[0], y[1]
            return float(
                0.5 * mom * mom + 0.5 * stiffness * q * q - 0.5 * k2 * q**4
            )

        def exact(t: float) -> State:
            sn, cn, dn = Elliptic.jacobi_sn_cn_dn(omega * t, modulus)
            return np.array([sn, omega * cn * dn])

        return SemilinearProblem(
            label="duffing",
            M=SquareMatrix([[0.0, 1.0], [-stiffness, 0.0]]),
            f=f,
            y0=[0.0, omega],
            invariant_H=H,
            exact=exact,
            J=SquareMatrix.canonical_j(2),
        )

    @staticmethod
    def wind_oscillation(p: WindParams) -> SemilinearProblem:
        """
        Return the averaged wind induced oscillation problem
        x' = [[-zeta, -lambda], [lambda, -zeta]] x + (x1 x2, (x1^2 - x2^2) / 2)
        with x0 = (0, 1).

        H is a first integral when theta = pi/2 and a Lyapunov function
        otherwise; the structure matrix is only attached in the first case.

        :param WindParams p: Problem parameters
        :rtype: SemilinearProblem
        """
        r = p.r
        sin_t = p.sin_theta
        cos_t = p.cos_theta

        def f(x: State) -> State:
            return np.array([x[0] * x[1], 0.5 * (x[0] * x[0] - x[1] * x[1])])

        def H(x: State) -> float:
            x1, x2 = x[0], x[1]
            return float(
                0.5 * r * (x1 * x1 + x2 * x2)
                - 0.5 * sin_t * (x1 * x2 * x2 - x1**3 / 3.0)
                + 0.5 * cos_t * (-x1 * x1 * x2 + x2**3 / 3.0)
            )

        return SemilinearProblem(
            label="wind",
            M=SquareMatrix([[-p.zeta, -p.lam], [p.lam, -p.zeta]]),
            f=f,
            y0=[0.0, 1.0],
            invariant_H=H,
            J=SquareMatrix.canonical_j(2) if p.zeta == 0.0 else None,
        )

    @staticmethod
    def from_label(
        label: str, params: dict[str, Any] | None = None
    ) -> SemilinearProblem:
        """
        Return a benchmark problem by label with parameter overrides

        :param str label: duffing or wind
        :param Dict params: k/omega for duffing, r/theta for wind
        :raises UnknownProblem: If the label is unknown
        :raises ValueError: If a parameter doesn't belong to the problem
        :rtype: SemilinearProblem
        """
        params = params or {}
        values: dict[str, float] = {
            key: float(value) for key, value in params.items()
        }
        try:
            match label:
                case "duffing":
                    return Problems.duffing(DuffingParams(**values))
                case "wind":
                    return Problems.wind_oscillation(WindParams(**values))
        except TypeError as e:
            raise ValueError(
                f"Invalid parameters {params} for problem {label}"
            ) from e
        raise Problems.UnknownProblem(label)

    @staticmethod
    def parse_params(text: str) -> dict[str, float]:
        """
        Parse a 'name=value,name=value' parameter override string

        :param str text: e.g. k=0.07,omega=20
        :raises ValueError: If an item is not name=value
        :rtype: Dict
        """
        params: dict[str, float] = {}
        for item in [i.strip() for i in text.split(",") if i.strip()]:
            if "=" not in item:
                raise ValueError(f"Parameter '{item}' is not name=value")
            name, value = item.split("=", 1)
            params[name.strip()] = float(value)
        return params
