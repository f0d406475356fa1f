from __future__ import annotations

import math

from .conditions import Conditions
from .logs import Loggable
from .settings import Settings
from .tableau import RKTableau, SEIMethod


class Catalog(Loggable):
    """
    The built-in symmetric and symplectic methods.

    Each tableau exists twice: as an SEI (SSSEI*) and flagged for classical
    RK stepping on the full right hand side (SSRK*).
    """

    log_prefix: str = __name__

    class UnknownMethod(KeyError):
        """No method with the requested name."""

        def __init__(self: Catalog.UnknownMethod, name: str) -> None:
            self.message: str = (
                f"Unknown method {name}, expected one of "
                f"{list(Catalog.builtin_methods())}"
            )
            super().__init__(self.message)

        def __str__(self: Catalog.UnknownMethod) -> str:
            return repr(self.message)

    @staticmethod
    def midpoint_tableau() -> RKTableau:
        """
        One stage: c_1 = 1/2, a_11 = b_1 / 2 with b_1 = 1 (implicit midpoint)

        :rtype: RKTableau
        """
        return RKTableau(c=[0.5], b=[1.0], A=[[0.5]])

    @staticmethod
    def gauss2_tableau() -> RKTableau:
        """
        Two stage Gauss collocation, order four

        :rtype: RKTableau
        """
        sqrt3 = math.sqrt(3.0)
        return RKTableau(
            c=[(3.0 - sqrt3) / 6.0, (3.0 + sqrt3) / 6.0],
            b=[0.5, 0.5],
            A=[
                [0.25, (3.0 - 2.0 * sqrt3) / 12.0],
                [(3.0 + 2.0 * sqrt3) / 12.0, 0.25],
            ],
        )

    @staticmethod
    def composition3_tableau() -> RKTableau:
        """
        Three stage composition of midpoint steps, order four.

        The lower triangle holds the weights and the diagonal the halved
        weights, so the abscissae are the row sums (b_1/2, 1/2, 1 - b_1/2).

        :rtype: RKTableau
        """
        cbrt2 = 2.0 ** (1.0 / 3.0)
        cbrt4 = 4.0 ** (1.0 / 3.0)
        b1 = (4.0 + 2.0 * cbrt2 + cbrt4) / 6.0
        b2 = (-1.0 - 2.0 * cbrt2 - cbrt4) / 3.0
        c1 = (4.0 + 2.0 * cbrt2 + cbrt4) / 12.0
        return RKTableau(
            c=[c1, 0.5, 1.0 - c1],
            b=[b1, b2, b1],
            A=[
                [b1 / 2.0, 0.0, 0.0],
                [b1, b2 / 2.0, 0.0],
                [b1, b2, b1 / 2.0],
            ],
        )

    @staticmethod
    def builtin_methods() -> dict[str, SEIMethod]:
        """
        Return the six built-in methods keyed by name, in catalog order

        :rtype: Dict
        """
        tableaux: list[tuple[str, str, RKTableau, int]] = [
            ("SSSEI1s2", "SSRK1s2", Catalog.midpoint_tableau(), 2),
            ("SSSEI2s4", "SSRK2s4", Catalog.gauss2_tableau(), 4),
            ("SSSEI3s4", "SSRK3s4", Catalog.composition3_tableau(), 4),
        ]
        methods: dict[str, SEIMethod] = {}
        for sei_name, _, tableau, order in tableaux:
            methods[sei_name] = SEIMethod(sei_name, tableau, order)
        for _, rk_name, tableau, order in tableaux:
            methods[rk_name] = SEIMethod(
                rk_name, tableau, order, classical=True
            )

        for method in methods.values():
            report = Conditions.check_order_conditions(
                method.tableau, method.order
            )
            if not report.passed:
                raise ValueError(
                    f"Built-in {method.name} fails its stated order: {report}"
                )
        return methods

    @staticmethod
    def get_method(name: str) -> SEIMethod:
        """
        Return a built-in method by name

        :param str name: Method name, e.g. SSSEI2s4
        :raises UnknownMethod: If no built-in method has that name
        :rtype: SEIMethod
        """
        methods = Catalog.builtin_methods()
        if name not in methods:
            raise Catalog.UnknownMethod(name)
        return methods[name]

    def load_method(
        self: Catalog,
        filename: str,
        order: int | None = None,
        classical: bool | None = None,
    ) -> SEIMethod:
        """
        Load a user supplied tableau file and confirm its declared order

        :param str filename: JSON tableau file {name, s, c, b, A, ...}
        :param int order: Override the order declared in the file
        :param bool classical: Override the stepping kind declared in the file
        :raises ValueError: If the tableau fails its order conditions
        :rtype: SEIMethod
        """
        method = SEIMethod.from_json_file(filename)
        if order is not None:
            method.order = order
        if classical is not None:
            method.classical = classical

        report = Conditions.check_order_conditions(method.tableau, method.order)
        if not report.passed:
            raise ValueError(
                f"Tableau {method.name} from {filename} fails order "
                f"{method.order}: {report} (worst {report.worst()})"
            )
        self._log(
            level=Settings.LOG_INFO,
            msg=f"Loaded {method.name} ({method.tableau.s} stages, order "
            f"{method.order}) from {filename}",
        )
        return method
