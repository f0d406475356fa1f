from __future__ import annotations

import logging
import math
from typing import Union

import numpy as np
import numpy.typing as npt

logger = logging.getLogger(__name__)

# Diagonal Pade numerator coefficients for degrees 3, 5, 7, 9 and 13
PADE_COEFFS: dict[int, list[float]] = {
    3: [120.0, 60.0, 12.0, 1.0],
    5: [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0],
    7: [
        17297280.0,
        8648640.0,
        1995840.0,
        277200.0,
        25200.0,
        1512.0,
        56.0,
        1.0,
    ],
    9: [
        17643225600.0,
        8821612800.0,
        2075673600.0,
        302702400.0,
        30270240.0,
        2162160.0,
        110880.0,
        3960.0,
        90.0,
        1.0,
    ],
    13: [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ],
}

# Largest 1-norm for which each Pade degree is accurate to double precision
PADE_THETAS: dict[int, float] = {
    3: 1.495585217958292e-2,
    5: 2.539398330063230e-1,
    7: 9.504178996162932e-1,
    9: 2.097847961257068e0,
    13: 5.371920351148152e0,
}


class SquareMatrix:
    """
    Dense real d x d matrix with value semantics.

    Carrier for M, hM, matrix exponentials and the structure matrix J. The
    entries are copied on construction and frozen, so instances can be shared
    freely between threads.
    """

    class DimensionMismatch(ValueError):
        """Operands don't have compatible dimensions."""

        def __init__(
            self: SquareMatrix.DimensionMismatch, left: int, right: int
        ) -> None:
            self.message: str = (
                f"Dimension mismatch between {left}x{left} and {right}"
            )
            super().__init__(self.message)

    class NonFiniteEntries(ValueError):
        """Entries contain NaN or Inf."""

    def __init__(
        self: SquareMatrix, entries: Union[npt.ArrayLike, SquareMatrix]
    ) -> None:
        if isinstance(entries, SquareMatrix):
            entries = entries.entries
        data = np.array(entries, dtype=np.float64)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise ValueError(
                f"entries must be a square 2D array, not shape {data.shape}"
            )
        if data.shape[0] < 1:
            raise ValueError("Dimension must be at least 1")
        if not np.all(np.isfinite(data)):
            raise SquareMatrix.NonFiniteEntries(
                f"Matrix entries must be finite: {data.tolist()}"
            )
        data.setflags(write=False)
        self.entries: npt.NDArray[np.float64] = data

    def __add__(self: SquareMatrix, other: SquareMatrix) -> SquareMatrix:
        return self.add(other)

    def __eq__(self: SquareMatrix, other: object) -> bool:
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return bool(np.array_equal(self.entries, other.entries))

    __hash__ = None  # type: ignore[assignment]

    def __matmul__(self: SquareMatrix, other: SquareMatrix) -> SquareMatrix:
        return self.mat_mul(other)

    def __mul__(self: SquareMatrix, alpha: float) -> SquareMatrix:
        return self.scale(alpha)

    def __neg__(self: SquareMatrix) -> SquareMatrix:
        return self.scale(-1.0)

    def __repr__(self: SquareMatrix) -> str:
        return self.__str__()

    def __rmul__(self: SquareMatrix, alpha: float) -> SquareMatrix:
        return self.scale(alpha)

    def __str__(self: SquareMatrix) -> str:
        return f"SquareMatrix(d={self.d}, {self.entries.tolist()})"

    def __sub__(self: SquareMatrix, other: SquareMatrix) -> SquareMatrix:
        return self.sub(other)

    @property
    def d(self: SquareMatrix) -> int:
        return int(self.entries.shape[0])

    def _check_dim(self: SquareMatrix, other: SquareMatrix) -> None:
        if other.d != self.d:
            raise SquareMatrix.DimensionMismatch(self.d, other.d)

    def add(self: SquareMatrix, other: SquareMatrix) -> SquareMatrix:
        """
        Return the entrywise sum self + other

        :param SquareMatrix other: Matrix of the same dimension
        :raises DimensionMismatch: If the dimensions differ
        :rtype: SquareMatrix
        """
        self._check_dim(other)
        return SquareMatrix(self.entries + other.entries)

    def det(self: SquareMatrix) -> float:
        return float(np.linalg.det(self.entries))

    def expm(self: SquareMatrix) -> SquareMatrix:
        """
        Return the matrix exponential e^A of this matrix.

        Scaling and squaring with the diagonal Pade approximant of the lowest
        degree in {3, 5, 7, 9, 13} that is accurate for the 1-norm of A;
        above the degree 13 threshold A is halved until it fits and the
        approximant is squared back.

        :rtype: SquareMatrix
        """
        A = self.entries
        norm = float(np.linalg.norm(A, ord=1))
        for degree in (3, 5, 7, 9):
            if norm <= PADE_THETAS[degree]:
                return SquareMatrix(SquareMatrix._pade(A, degree))

        squarings = 0
        if norm > PADE_THETAS[13]:
            squarings = max(
                0, int(math.ceil(math.log2(norm / PADE_THETAS[13])))
            )
        R = SquareMatrix._pade(A / 2.0**squarings, 13)
        for _ in range(squarings):
            R = R @ R
        logger.debug(
            f"{__name__}: expm of norm {norm} used {squarings} squarings"
        )
        return SquareMatrix(R)

    @staticmethod
    def _pade(
        A: npt.NDArray[np.float64], degree: int
    ) -> npt.NDArray[np.float64]:
        """
        Evaluate the [degree/degree] Pade approximant to e^A

        :param ndarray A: Matrix with 1-norm inside the degree's threshold
        :param int degree: One of 3, 5, 7, 9, 13
        :rtype: ndarray
        """
        b = PADE_COEFFS[degree]
        ident = np.eye(A.shape[0])
        A2 = A @ A
        if degree == 13:
            A4 = A2 @ A2
            A6 = A2 @ A4
            U = A @ (
                A6 @ (b[13] * A6 + b[11] * A4 + b[9] * A2)
                + b[7] * A6
                + b[5] * A4
                + b[3] * A2
                + b[1] * ident
            )
            V = (
                A6 @ (b[12] * A6 + b[10] * A4 + b[8] * A2)
                + b[6] * A6
                + b[4] * A4
                + b[2] * A2
                + b[0] * ident
            )
        else:
            U = b[1] * ident
            V = b[0] * ident
            A2n = ident
            for i in range(1, degree // 2 + 1):
                A2n = A2n @ A2
                U = U + b[2 * i + 1] * A2n
                V = V + b[2 * i] * A2n
            U = A @ U
        return np.linalg.solve(V - U, V + U)

    def inf_norm(self: SquareMatrix) -> float:
        """
        Maximum absolute row sum

        :rtype: float
        """
        return float(np.max(np.sum(np.abs(self.entries), axis=1)))

    def inverse(self: SquareMatrix) -> SquareMatrix:
        """
        Return the matrix inverse

        :raises ValueError: If the matrix is singular
        :rtype: SquareMatrix
        """
        try:
            return SquareMatrix(np.linalg.inv(self.entries))
        except np.linalg.LinAlgError as e:
            raise ValueError(f"Matrix is singular: {self}") from e

    def is_antisymmetric(self: SquareMatrix, tol: float = 0.0) -> bool:
        return bool(
            np.max(np.abs(self.entries + self.entries.T), initial=0.0) <= tol
        )

    def is_hamiltonian(self: SquareMatrix, J: SquareMatrix, tol: float) -> bool:
        """
        Is A^T J + J A = 0 within tol (inf-norm)

        :param SquareMatrix J: Antisymmetric structure matrix
        :param float tol: Allowed inf-norm defect
        :rtype: bool
        """
        self._check_dim(J)
        return (self.transpose() @ J + J @ self).inf_norm() <= tol

    def mat_mul(self: SquareMatrix, other: SquareMatrix) -> SquareMatrix:
        """
        Return the matrix product self * other

        :param SquareMatrix other: Matrix of the same dimension
        :raises DimensionMismatch: If the dimensions differ
        :rtype: SquareMatrix
        """
        self._check_dim(other)
        return SquareMatrix(self.entries @ other.entries)

    def mat_vec(
        self: SquareMatrix, v: npt.ArrayLike
    ) -> npt.NDArray[np.float64]:
        """
        Return the matrix vector product A v

        :param ArrayLike v: Vector of length d
        :raises DimensionMismatch: If len(v) != d
        :rtype: ndarray
        """
        vec = np.asarray(v, dtype=np.float64)
        if vec.shape != (self.d,):
            raise SquareMatrix.DimensionMismatch(self.d, vec.shape[0])
        return self.entries @ vec

    def scale(self: SquareMatrix, alpha: float) -> SquareMatrix:
        return SquareMatrix(float(alpha) * self.entries)

    def sub(self: SquareMatrix, other: SquareMatrix) -> SquareMatrix:
        self._check_dim(other)
        return SquareMatrix(self.entries - other.entries)

    def transpose(self: SquareMatrix) -> SquareMatrix:
        return SquareMatrix(self.entries.T)

    @staticmethod
    def canonical_j(d: int) -> SquareMatrix:
        """
        Return the canonical structure matrix J = [[0, I], [-I, 0]]

        :param int d: Even dimension
        :raises ValueError: If d is odd or < 2
        :rtype: SquareMatrix
        """
        if d < 2 or d % 2:
            raise ValueError(f"Symplectic structure needs even d, not {d}")
        n = d // 2
        J = np.zeros((d, d))
        J[:n, n:] = np.eye(n)
        J[n:, :n] = -np.eye(n)
        return SquareMatrix(J)

    @staticmethod
    def identity(d: int) -> SquareMatrix:
        return SquareMatrix(np.eye(d))

    @staticmethod
    def random_hamiltonian(
        d: int, norm: float, rng: np.random.Generator
    ) -> SquareMatrix:
        """
        Return a random Hamiltonian matrix Z = J^-1 S, S symmetric, with
        inf-norm drawn uniformly from (0, norm]

        :param int d: Even dimension
        :param float norm: Upper bound on the inf-norm
        :param Generator rng: numpy random generator
        :rtype: SquareMatrix
        """
        J = SquareMatrix.canonical_j(d)
        S = rng.standard_normal((d, d))
        S = S + S.T
        Z = J.inverse().entries @ S
        target = norm * (1.0 - rng.random())
        return SquareMatrix(Z * (target / np.max(np.sum(np.abs(Z), axis=1))))

    @staticmethod
    def zeros(d: int) -> SquareMatrix:
        return SquareMatrix(np.zeros((d, d)))
