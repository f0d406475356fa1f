from __future__ import annotations

import os
import sys

import pytest

sys.path.append(
    os.path.join(os.path.dirname(os.path.realpath(__file__)), "../")
)

from typing import Dict

import numpy as np
from fixtures import builtin, duffing

from pysei.catalog import Catalog
from pysei.conditions import Conditions
from pysei.matfun import SquareMatrix
from pysei.problems import DuffingParams, Problems
from pysei.settings import Settings
from pysei.tableau import RKTableau, SEIMethod


class TestConditions:
    @pytest.fixture(scope="module")
    def test_data(self: TestConditions) -> Dict:
        """
        This immutable fixture stores the expected results of unit tests
        """
        problem = Problems.duffing(DuffingParams())
        return {
            "J": SquareMatrix.canonical_j(2),
            "samples": Conditions.default_samples(
                [problem.M * h for h in duffing["h_list"][:2]]
            ),
            "n_samples": 1 + 2 * 2 + 5,
            "rk_tol": 1e-13,
            "ei_tol": 1e-11,
            "midpoint_order3_residual": 1.0 / 12.0,
            "euler": RKTableau(c=[0.0], b=[1.0], A=[[0.0]]),
            "skewed": RKTableau(
                c=[0.2, 0.7], b=[0.3, 0.7], A=[[0.1, 0.1], [0.3, 0.4]]
            ),
            "heun": RKTableau(
                c=[0.0, 1.0], b=[0.5, 0.5], A=[[0.0, 0.0], [1.0, 0.0]]
            ),
            "n_transfer": 20,
            "transfer_norm": 3.0,
            "transfer_sym_tol": 1e-12,
            "transfer_symp_tol": 1e-11,
        }

    def test_rk_properties_of_builtins(
        self: TestConditions, test_data: Dict
    ) -> None:
        for name in builtin["names"]:
            t = Catalog.get_method(name).tableau
            sym = Conditions.check_rk_symmetry(t)
            symp = Conditions.check_rk_symplecticity(t)
            assert sym.passed and sym.residual <= test_data["rk_tol"]
            assert symp.passed and symp.residual <= test_data["rk_tol"]

    def test_rk_properties_of_euler(
        self: TestConditions, test_data: Dict
    ) -> None:
        sym = Conditions.check_rk_symmetry(test_data["euler"])
        symp = Conditions.check_rk_symplecticity(test_data["euler"])
        assert not sym.passed
        assert sym.residual == 1.0
        assert not symp.passed
        assert symp.residual == 1.0

    def test_default_samples(self: TestConditions, test_data: Dict) -> None:
        samples = test_data["samples"]
        assert len(samples) == test_data["n_samples"]
        assert samples[0] == ("zero", SquareMatrix.zeros(2))
        labels = [label for label, _ in samples]
        assert len(set(labels)) == len(labels)
        again = Conditions.default_samples(
            [Z for label, Z in samples if label.startswith("+hM")]
        )
        assert [Z for _, Z in again] == [Z for _, Z in samples]

    def test_ei_properties_of_builtins(
        self: TestConditions, test_data: Dict
    ) -> None:
        for name in builtin["names"]:
            m = Catalog.get_method(name)
            for label, Z in test_data["samples"]:
                sym = Conditions.check_ei_symmetry(m, Z, sample=label)
                symp = Conditions.check_ei_symplecticity(
                    m, Z, test_data["J"], sample=label
                )
                assert sym.residual <= test_data["ei_tol"], str(sym)
                assert symp.residual <= test_data["ei_tol"], str(symp)
                assert len(symp.gammas) == m.s

    def test_gammas_are_weights(self: TestConditions, test_data: Dict) -> None:
        m = Catalog.get_method("SSSEI2s4")
        _, Z = test_data["samples"][1]
        report = Conditions.check_ei_symplecticity(m, Z, test_data["J"])
        assert report.gammas == pytest.approx(list(m.tableau.b), abs=1e-12)

    def test_non_hamiltonian_sample_fails(
        self: TestConditions, test_data: Dict
    ) -> None:
        m = Catalog.get_method("SSSEI1s2")
        hM = SquareMatrix([[1.0, 0.0], [0.0, 0.0]])
        report = Conditions.check_ei_symplecticity(m, hM, test_data["J"])
        assert not report.passed
        assert report.residual > 1e-3
        assert report.worst() == "flow"
        # symmetry holds for any Z
        assert Conditions.check_ei_symmetry(m, hM).passed

    def test_ei_symmetry_of_euler(
        self: TestConditions, test_data: Dict
    ) -> None:
        m = SEIMethod("euler", test_data["euler"], 1)
        report = Conditions.check_ei_symmetry(m, SquareMatrix.zeros(2))
        assert not report.passed

    def test_invalid_structure(self: TestConditions) -> None:
        m = Catalog.get_method("SSSEI1s2")
        with pytest.raises(Conditions.InvalidStructure):
            Conditions.check_ei_symplecticity(
                m, SquareMatrix.zeros(2), SquareMatrix.identity(2)
            )
        odd = SquareMatrix(
            [[0.0, 1.0, 0.0], [-1.0, 0.0, 1.0], [0.0, -1.0, 0.0]]
        )
        with pytest.raises(Conditions.InvalidStructure):
            Conditions.check_ei_symplecticity(m, SquareMatrix.zeros(3), odd)
        with pytest.raises(SquareMatrix.DimensionMismatch):
            Conditions.check_ei_symplecticity(
                m, SquareMatrix.zeros(4), SquareMatrix.canonical_j(2)
            )

    def test_order_conditions(self: TestConditions, test_data: Dict) -> None:
        midpoint = Catalog.midpoint_tableau()
        assert Conditions.check_order_conditions(midpoint, 2).passed
        order3 = Conditions.check_order_conditions(midpoint, 3)
        assert not order3.passed
        assert order3.residual == pytest.approx(
            test_data["midpoint_order3_residual"], abs=1e-14
        )
        for tableau in (
            Catalog.gauss2_tableau(),
            Catalog.composition3_tableau(),
        ):
            report = Conditions.check_order_conditions(tableau, 4)
            assert report.residual <= test_data["rk_tol"], report.worst()

        heun = RKTableau(
            c=[0.0, 1.0], b=[0.5, 0.5], A=[[0.0, 0.0], [1.0, 0.0]]
        )
        assert Conditions.check_order_conditions(heun, 2).passed
        assert not Conditions.check_order_conditions(heun, 3).passed

        with pytest.raises(ValueError):
            Conditions.check_order_conditions(midpoint, 5)
        with pytest.raises(ValueError):
            Conditions.check_order_conditions(midpoint, 0)

    def test_row_sum_condition(self: TestConditions) -> None:
        shifted = RKTableau(c=[0.4], b=[1.0], A=[[0.5]])
        report = Conditions.check_order_conditions(shifted, 1)
        assert not report.passed
        assert report.worst() == "row_sum[0]"

    def test_verify_method(self: TestConditions, test_data: Dict) -> None:
        for name in builtin["names"]:
            m = Catalog.get_method(name)
            reports = Conditions.verify_method(
                m, test_data["samples"], test_data["J"]
            )
            assert len(reports) == 3 + 2 * test_data["n_samples"]
            assert all(r.passed for r in reports), [
                str(r) for r in reports if not r.passed
            ]

    def test_ei_symmetry_at_zero_is_rk_symmetry(
        self: TestConditions, test_data: Dict
    ) -> None:
        zero = SquareMatrix.zeros(2)
        for key in ("euler", "heun", "skewed"):
            t = test_data[key]
            ei = Conditions.check_ei_symmetry(SEIMethod(key, t, 1), zero)
            rk = Conditions.check_rk_symmetry(t)
            assert rk.residual > 0.0
            assert ei.residual == pytest.approx(rk.residual, abs=1e-15)

    def test_rk_symmetry_under_reversal(
        self: TestConditions, test_data: Dict
    ) -> None:
        tableaux = [test_data[key] for key in ("euler", "heun", "skewed")]
        tableaux += [Catalog.get_method(n).tableau for n in builtin["sei"]]
        for t in tableaux:
            forward = Conditions.check_rk_symmetry(t)
            backward = Conditions.check_rk_symmetry(t.reversed())
            assert backward.residual == pytest.approx(
                forward.residual, abs=1e-15
            )

    def test_ei_symmetry_of_euler_away_from_zero(
        self: TestConditions, test_data: Dict
    ) -> None:
        m = SEIMethod("euler", test_data["euler"], 1)
        report = Conditions.check_ei_symmetry(m, SquareMatrix.identity(2))
        assert not report.passed
        assert report.residual > 0.1

    def test_ei_symplecticity_at_zero_is_rk_symplecticity(
        self: TestConditions, test_data: Dict
    ) -> None:
        zero = SquareMatrix.zeros(2)
        for key in ("euler", "heun", "skewed"):
            t = test_data[key]
            ei = Conditions.check_ei_symplecticity(
                SEIMethod(key, t, 1), zero, test_data["J"]
            )
            rk = Conditions.check_rk_symplecticity(t)
            assert rk.residual > 0.0
            assert ei.residual == pytest.approx(rk.residual, abs=1e-15)
            assert ei.gammas == pytest.approx(list(t.b), abs=1e-15)

    def test_transfer_to_random_hamiltonian_samples(
        self: TestConditions, test_data: Dict
    ) -> None:
        rng = np.random.default_rng(Settings.RANDOM_SEED + 1)
        samples = [
            SquareMatrix.random_hamiltonian(2, test_data["transfer_norm"], rng)
            for _ in range(test_data["n_transfer"])
        ]
        for name in builtin["sei"]:
            m = Catalog.get_method(name)
            for n, Z in enumerate(samples):
                sym = Conditions.check_ei_symmetry(m, Z, sample=f"{n}")
                symp = Conditions.check_ei_symplecticity(
                    m, Z, test_data["J"], sample=f"{n}"
                )
                assert sym.residual <= test_data["transfer_sym_tol"], str(sym)
                assert (
                    symp.residual <= test_data["transfer_symp_tol"]
                ), str(symp)
