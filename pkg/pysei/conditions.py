from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from .matfun import SquareMatrix
from .settings import Settings
from .tableau import RKTableau, SEIMethod

logger = logging.getLogger(__name__)


class ConditionReport:
    """
    Outcome of one condition system: the per-equation defects and their max
    """

    def __init__(
        self: ConditionReport,
        condition_name: str,
        details: list[tuple[str, float]],
        threshold: float,
        gammas: Optional[list[float]] = None,
        sample: str = "",
    ) -> None:
        self.condition_name: str = condition_name
        self.details: list[tuple[str, float]] = details
        self.residual: float = max((d for _, d in details), default=0.0)
        self.threshold: float = threshold
        self.gammas: list[float] = gammas if gammas is not None else []
        self.sample: str = sample

    def __repr__(self: ConditionReport) -> str:
        return self.__str__()

    def __str__(self: ConditionReport) -> str:
        state = "pass" if self.passed else "FAIL"
        sample = f" @ {self.sample}" if self.sample else ""
        return (
            f"{self.condition_name}{sample}: residual {self.residual:.3e} "
            f"(threshold {self.threshold:.0e}) {state}"
        )

    @property
    def passed(self: ConditionReport) -> bool:
        return self.residual <= self.threshold

    def worst(self: ConditionReport) -> str:
        """
        Return the label of the equation with the largest defect

        :rtype: str
        """
        if not self.details:
            return ""
        return max(self.details, key=lambda item: item[1])[0]


class Conditions:
    """
    Numerical checkers for the symmetry, symplecticity and order conditions
    of RK methods and of their exponential (SEI) lifts.

    Matrix valued conditions are evaluated pointwise at a sample Z standing
    in for hM.
    """

    log_prefix: str = __name__

    class InvalidStructure(ValueError):
        """The symplectic structure matrix J is unusable."""

    @staticmethod
    def check_rk_symmetry(t: RKTableau) -> ConditionReport:
        """
        Defects of c_i = 1 - c_{s+1-i}, a_ij = b_{s+1-j} - a_{s+1-i,s+1-j}
        and b_i = b_{s+1-i}

        :param RKTableau t: Tableau to check
        :rtype: ConditionReport
        """
        s = t.s
        details: list[tuple[str, float]] = []
        for i in range(s):
            details.append(
                (f"c[{i}]", abs(t.c[i] - (1.0 - t.c[s - 1 - i])))
            )
        for i in range(s):
            for j in range(s):
                rhs = t.b[s - 1 - j] - t.A[s - 1 - i, s - 1 - j]
                details.append((f"a[{i},{j}]", abs(t.A[i, j] - rhs)))
        for i in range(s):
            details.append((f"b[{i}]", abs(t.b[i] - t.b[s - 1 - i])))
        return ConditionReport(
            "rk_symmetry", details, threshold=Settings.SCALAR_TOL
        )

    @staticmethod
    def check_rk_symplecticity(t: RKTableau) -> ConditionReport:
        """
        Defects of b_i b_j = b_i a_ij + b_j a_ji for all i, j

        :param RKTableau t: Tableau to check
        :rtype: ConditionReport
        """
        details: list[tuple[str, float]] = []
        for i in range(t.s):
            for j in range(t.s):
                defect = (
                    t.b[i] * t.b[j]
                    - t.b[i] * t.A[i, j]
                    - t.b[j] * t.A[j, i]
                )
                details.append((f"pair[{i},{j}]", abs(defect)))
        return ConditionReport(
            "rk_symplecticity", details, threshold=Settings.SCALAR_TOL
        )

    @staticmethod
    def check_ei_symmetry(
        m: SEIMethod, Z: SquareMatrix, sample: str = ""
    ) -> ConditionReport:
        """
        Defects of the exponential integrator symmetry conditions at Z:

            c_i = 1 - c_{s+1-i}
            abar_ij(Z) = e^{c_i Z} bbar_{s+1-j}(-Z) - abar_{s+1-i,s+1-j}(-Z)
            bbar_i(Z) = e^{Z} bbar_{s+1-i}(-Z)

        The abscissa family is evaluated first; the second family is used in
        its e^{c_i Z} form, which is equivalent once the first holds.

        :param SEIMethod m: Method whose SEI coefficients are checked
        :param SquareMatrix Z: Sample standing in for hM
        :param str sample: Label of the sample, for reporting
        :rtype: ConditionReport
        """
        t = m.tableau
        s = t.s
        details: list[tuple[str, float]] = []
        for i in range(s):
            details.append(
                (f"c[{i}]", abs(t.c[i] - (1.0 - t.c[s - 1 - i])))
            )

        minus_Z = -Z
        for i in range(s):
            e_ci = (Z * t.c[i]).expm()
            for j in range(s):
                rhs = e_ci @ m.sei_bbar(s - 1 - j, minus_Z) - m.sei_abar(
                    s - 1 - i, s - 1 - j, minus_Z
                )
                defect = (m.sei_abar(i, j, Z) - rhs).inf_norm()
                details.append((f"abar[{i},{j}]", defect))

        e_Z = Z.expm()
        for i in range(s):
            rhs = e_Z @ m.sei_bbar(s - 1 - i, minus_Z)
            details.append((f"bbar[{i}]", (m.sei_bbar(i, Z) - rhs).inf_norm()))

        return ConditionReport(
            "ei_symmetry", details, threshold=Settings.MATRIX_TOL, sample=sample
        )

    @staticmethod
    def check_ei_symplecticity(
        m: SEIMethod, hM: SquareMatrix, J: SquareMatrix, sample: str = ""
    ) -> ConditionReport:
        """
        Defects of the exponential integrator symplecticity conditions, with
        S = e^{hM} and S_i = e^{c_i hM}:

            bbar_i^T J S S_i^-1 = S_i^-T S^T J bbar_i = gamma_i J
            bbar_i^T J bbar_j = bbar_i^T J S S_i^-1 abar_ij
                                + abar_ji^T S_j^-T S^T J bbar_j

        gamma_i is fitted by least squares projection onto J and reported.
        The exact linear flow condition S^T J S = J is included as well.

        :param SEIMethod m: Method whose SEI coefficients are checked
        :param SquareMatrix hM: Linear part times step size
        :param SquareMatrix J: Antisymmetric invertible structure matrix
        :param str sample: Label of the sample, for reporting
        :raises InvalidStructure: If J is unusable or d is odd
        :rtype: ConditionReport
        """
        if hM.d != J.d:
            raise SquareMatrix.DimensionMismatch(hM.d, J.d)
        if J.d % 2:
            raise Conditions.InvalidStructure(
                f"Symplectic structure needs even d, not {J.d}"
            )
        if not J.is_antisymmetric():
            raise Conditions.InvalidStructure(f"J is not antisymmetric: {J}")
        if abs(J.det()) == 0.0:
            raise Conditions.InvalidStructure(f"J is singular: {J}")

        t = m.tableau
        s = t.s
        S = hM.expm()
        ST = S.transpose()
        J_dot_J = float(np.sum(J.entries * J.entries))

        details: list[tuple[str, float]] = [
            ("flow", (ST @ J @ S - J).inf_norm())
        ]
        gammas: list[float] = []
        left: list[SquareMatrix] = []
        right: list[SquareMatrix] = []
        bbar: list[SquareMatrix] = []
        for i in range(s):
            S_i_inv = (hM * t.c[i]).expm().inverse()
            b_i = m.sei_bbar(i, hM)
            X = b_i.transpose() @ J @ S @ S_i_inv
            Y = S_i_inv.transpose() @ ST @ J @ b_i
            gamma = float(np.sum(X.entries * J.entries)) / J_dot_J
            details.append((f"gamma_fit[{i}]", (X - J * gamma).inf_norm()))
            details.append((f"counterpart[{i}]", (Y - J * gamma).inf_norm()))
            gammas.append(gamma)
            left.append(X)
            right.append(Y)
            bbar.append(b_i)

        for i in range(s):
            for j in range(s):
                lhs = bbar[i].transpose() @ J @ bbar[j]
                rhs = left[i] @ m.sei_abar(i, j, hM) + m.sei_abar(
                    j, i, hM
                ).transpose() @ right[j]
                details.append((f"pair[{i},{j}]", (lhs - rhs).inf_norm()))

        logger.log(
            level=Settings.LOG_DEV_LEVEL,
            msg=f"{Conditions.log_prefix}: {m} fitted gammas {gammas}",
        )
        return ConditionReport(
            "ei_symplecticity",
            details,
            threshold=Settings.EI_SYMPLECTIC_TOL,
            gammas=gammas,
            sample=sample,
        )

    @staticmethod
    def check_order_conditions(t: RKTableau, p: int) -> ConditionReport:
        """
        Defects of every classical order condition up to order p (1..4),
        plus row sum consistency sum_j a_ij = c_i

        :param RKTableau t: Tableau to check
        :param int p: Order, one of 1, 2, 3, 4
        :raises ValueError: If p is unsupported
        :rtype: ConditionReport
        """
        if p not in (1, 2, 3, 4):
            raise ValueError(f"Order conditions available for p=1..4, not {p}")

        b, c, A = t.b, t.c, t.A
        Ac = A @ c
        equations: list[tuple[str, int, float, float]] = [
            ("sum b", 1, float(np.sum(b)), 1.0),
            ("sum bc", 2, float(b @ c), 1.0 / 2.0),
            ("sum bc^2", 3, float(b @ c**2), 1.0 / 3.0),
            ("sum bAc", 3, float(b @ Ac), 1.0 / 6.0),
            ("sum bc^3", 4, float(b @ c**3), 1.0 / 4.0),
            ("sum bc(Ac)", 4, float(b @ (c * Ac)), 1.0 / 8.0),
            ("sum bAc^2", 4, float(b @ (A @ c**2)), 1.0 / 12.0),
            ("sum bAAc", 4, float(b @ (A @ Ac)), 1.0 / 24.0),
        ]
        details: list[tuple[str, float]] = [
            (name, abs(value - target))
            for name, order, value, target in equations
            if order <= p
        ]
        row_sums = np.sum(A, axis=1)
        for i in range(t.s):
            details.append((f"row_sum[{i}]", abs(row_sums[i] - c[i])))
        return ConditionReport(
            f"order_{p}", details, threshold=Settings.SCALAR_TOL
        )

    @staticmethod
    def default_samples(
        hM_list: list[SquareMatrix], d: int = 2
    ) -> list[tuple[str, SquareMatrix]]:
        """
        Return the labelled sample set {0, +-hM for each given hM, random
        Hamiltonian matrices}

        :param List hM_list: Step scaled linear parts from the harness
        :param int d: Dimension of the samples
        :rtype: List
        """
        samples: list[tuple[str, SquareMatrix]] = [
            ("zero", SquareMatrix.zeros(d))
        ]
        for n, hM in enumerate(hM_list):
            samples.append((f"+hM[{n}]", hM))
            samples.append((f"-hM[{n}]", -hM))
        rng = np.random.default_rng(Settings.RANDOM_SEED)
        for n in range(Settings.RANDOM_SAMPLES):
            samples.append(
                (
                    f"random[{n}]",
                    SquareMatrix.random_hamiltonian(
                        d, Settings.RANDOM_SAMPLE_NORM, rng
                    ),
                )
            )
        return samples

    @staticmethod
    def verify_method(
        m: SEIMethod,
        samples: list[tuple[str, SquareMatrix]],
        J: SquareMatrix,
    ) -> list[ConditionReport]:
        """
        Run every condition check for one method: its stated order, RK
        symmetry and symplecticity, and the SEI checks at each sample

        :param SEIMethod m: Method to verify
        :param List samples: Labelled Z samples, all of dimension J.d
        :param SquareMatrix J: Structure matrix for the symplecticity checks
        :rtype: List
        """
        reports: list[ConditionReport] = [
            Conditions.check_order_conditions(m.tableau, m.order),
            Conditions.check_rk_symmetry(m.tableau),
            Conditions.check_rk_symplecticity(m.tableau),
        ]
        for label, Z in samples:
            reports.append(Conditions.check_ei_symmetry(m, Z, sample=label))
            reports.append(
                Conditions.check_ei_symplecticity(m, Z, J, sample=label)
            )
        return reports
