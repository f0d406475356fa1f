from __future__ import annotations

import json
import logging
from io import TextIOWrapper
from typing import Any, Union

import numpy as np
import numpy.typing as npt

from .matfun import SquareMatrix

logger = logging.getLogger(__name__)


class RKTableau:
    """
    The (c, b, A) coefficients of an s-stage Runge-Kutta method
    """

    log_prefix: str = __name__

    def __init__(
        self: RKTableau,
        c: npt.ArrayLike,
        b: npt.ArrayLike,
        A: npt.ArrayLike,
    ) -> None:
        c_arr = np.array(c, dtype=np.float64)
        b_arr = np.array(b, dtype=np.float64)
        A_arr = np.array(A, dtype=np.float64)

        if c_arr.ndim != 1 or c_arr.shape[0] < 1:
            raise ValueError(f"c must be a non-empty vector, not {c_arr}")
        s = c_arr.shape[0]
        if b_arr.shape != (s,):
            raise ValueError(f"b must have {s} entries, not {b_arr.shape}")
        if A_arr.shape != (s, s):
            raise ValueError(f"A must be {s}x{s}, not {A_arr.shape}")
        for name, arr in (("c", c_arr), ("b", b_arr), ("A", A_arr)):
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} entries must be finite: {arr}")
            arr.setflags(write=False)

        self.s: int = s
        self.c: npt.NDArray[np.float64] = c_arr
        self.b: npt.NDArray[np.float64] = b_arr
        self.A: npt.NDArray[np.float64] = A_arr

    def __eq__(self: RKTableau, other: object) -> bool:
        if not isinstance(other, RKTableau):
            return NotImplemented
        return (
            np.array_equal(self.c, other.c)
            and np.array_equal(self.b, other.b)
            and np.array_equal(self.A, other.A)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self: RKTableau) -> str:
        return self.__str__()

    def __str__(self: RKTableau) -> str:
        return (
            f"RKTableau(s={self.s}, c={self.c.tolist()}, b={self.b.tolist()}, "
            f"A={self.A.tolist()})"
        )

    @staticmethod
    def from_dict(data: dict[str, Any]) -> RKTableau:
        """
        Return a tableau from a dict with keys c, b, A and optionally s

        :param Dict data: Tableau serialised as a dict
        :raises ValueError: If s is given and doesn't match c
        :rtype: RKTableau
        """
        for key in ("c", "b", "A"):
            if key not in data:
                raise ValueError(f"Tableau data is missing key '{key}'")
        tableau = RKTableau(c=data["c"], b=data["b"], A=data["A"])
        if "s" in data and int(data["s"]) != tableau.s:
            raise ValueError(
                f"Tableau declares s={data['s']} but has {tableau.s} stages"
            )
        return tableau

    def reversed(self: RKTableau) -> RKTableau:
        """
        Return the tableau with stages relabeled i -> s+1-i

        :rtype: RKTableau
        """
        return RKTableau(c=self.c[::-1], b=self.b[::-1], A=self.A[::-1, ::-1])

    def to_dict(self: RKTableau) -> dict[str, Union[int, list]]:
        """
        Return the tableau serialised as a dict

        :rtype: Dict
        """
        return {
            "s": self.s,
            "c": self.c.tolist(),
            "b": self.b.tolist(),
            "A": self.A.tolist(),
        }


class SEIMethod:
    """
    A named RK tableau with its classical order.

    The tableau fully determines the matrix valued SEI coefficients
    abar_ij(Z) = a_ij e^{(c_i - c_j) Z} and bbar_i(Z) = b_i e^{(1 - c_i) Z}.
    When classical is set, steppers apply the plain RK method to the whole
    right hand side My + f(y) instead.
    """

    log_prefix: str = __name__

    class StageIndexError(IndexError):
        """A stage index is outside 0..s-1."""

        def __init__(
            self: SEIMethod.StageIndexError, name: str, index: int, s: int
        ) -> None:
            self.message: str = (
                f"Stage index {index} out of range for {name} with {s} stages"
            )
            super().__init__(self.message)

    def __init__(
        self: SEIMethod,
        name: str,
        tableau: RKTableau,
        order: int,
        classical: bool = False,
    ) -> None:
        if not name:
            raise ValueError("Name required to create a method")
        self.name: str = str(name)

        if not isinstance(tableau, RKTableau):
            raise TypeError(f"tableau must be RKTableau, not {type(tableau)}")
        self.tableau: RKTableau = tableau

        if type(order) != int or order < 1:
            raise ValueError(f"order must be a positive int, not {order}")
        self.order: int = order
        self.classical: bool = bool(classical)

    def __repr__(self: SEIMethod) -> str:
        return self.__str__()

    def __str__(self: SEIMethod) -> str:
        return self.name

    def _check_index(self: SEIMethod, index: int) -> None:
        if not 0 <= index < self.tableau.s:
            raise SEIMethod.StageIndexError(self.name, index, self.tableau.s)

    @property
    def s(self: SEIMethod) -> int:
        return self.tableau.s

    @staticmethod
    def from_dict(data: dict[str, Any]) -> SEIMethod:
        """
        Return a method from the tableau exchange format
        {name, s, c, b, A} plus optional order and classical keys

        :param Dict data: Method serialised as a dict
        :rtype: SEIMethod
        """
        if "name" not in data:
            raise ValueError("Method data is missing key 'name'")
        return SEIMethod(
            name=data["name"],
            tableau=RKTableau.from_dict(data),
            order=int(data.get("order", 1)),
            classical=bool(data.get("classical", False)),
        )

    @staticmethod
    def from_json(json_data: str) -> SEIMethod:
        """
        Return a method from a JSON string

        :param str json_data: JSON string to parse
        :rtype: SEIMethod
        """
        data: dict
        try:
            data = json.loads(json_data)
        except Exception as e:
            logger.error(
                f"{SEIMethod.log_prefix}: Couldn't parse tableau string as "
                f"JSON: {json_data}"
            )
            raise e
        return SEIMethod.from_dict(data)

    @staticmethod
    def from_json_file(filename: str) -> SEIMethod:
        """
        Return a method from the contents of a JSON tableau file

        :param str filename: JSON filename to load
        :rtype: SEIMethod
        """
        json_file: TextIOWrapper
        try:
            json_file = open(filename, "r")
            json_data = json_file.read()
        except Exception as e:
            logger.error(
                f"{SEIMethod.log_prefix}: Couldn't open tableau file {filename}"
            )
            raise e

        json_file.close()
        return SEIMethod.from_json(json_data)

    def sei_abar(
        self: SEIMethod, i: int, j: int, Z: SquareMatrix
    ) -> SquareMatrix:
        """
        Return abar_ij(Z) = a_ij e^{(c_i - c_j) Z}

        :param int i: Stage index, 0 <= i < s
        :param int j: Stage index, 0 <= j < s
        :param SquareMatrix Z: Plays the role of hM
        :raises StageIndexError: If i or j is out of range
        :rtype: SquareMatrix
        """
        self._check_index(i)
        self._check_index(j)
        t = self.tableau
        return (Z * (t.c[i] - t.c[j])).expm() * t.A[i, j]

    def sei_bbar(self: SEIMethod, i: int, Z: SquareMatrix) -> SquareMatrix:
        """
        Return bbar_i(Z) = b_i e^{(1 - c_i) Z}

        :param int i: Stage index, 0 <= i < s
        :param SquareMatrix Z: Plays the role of hM
        :raises StageIndexError: If i is out of range
        :rtype: SquareMatrix
        """
        self._check_index(i)
        t = self.tableau
        return (Z * (1.0 - t.c[i])).expm() * t.b[i]

    def to_dict(self: SEIMethod) -> dict[str, Any]:
        """
        Return the method serialised in the tableau exchange format

        :rtype: Dict
        """
        data: dict[str, Any] = {"name": self.name}
        data.update(self.tableau.to_dict())
        data["order"] = self.order
        data["classical"] = self.classical
        return data

    def to_json_file(self: SEIMethod, filename: str) -> None:
        """
        Serialise this method to a JSON tableau file

        :param str filename: Output filename path to write the JSON
        :rtype: None
        """
        json_data: str = json.dumps(self.to_dict(), indent=4)
        try:
            with open(filename, "w") as json_file:
                json_file.write(json_data)
        except Exception as e:
            logger.error(
                f"{SEIMethod.log_prefix}: Couldn't write tableau file "
                f"{filename}"
            )
            raise e
