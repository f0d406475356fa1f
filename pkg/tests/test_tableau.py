from __future__ import annotations

import os
import sys

import pytest

sys.path.append(
    os.path.join(os.path.dirname(os.path.realpath(__file__)), "../")
)

import json
import math
from pathlib import Path
from typing import Dict

import numpy as np
from fixtures import tableau_files

from pysei.catalog import Catalog
from pysei.matfun import SquareMatrix
from pysei.tableau import RKTableau, SEIMethod


class TestRKTableau:
    @pytest.fixture(scope="module")
    def test_data(self: TestRKTableau) -> Dict:
        """
        This immutable fixture stores the expected results of unit tests
        """
        return {
            "euler": {"c": [0.0], "b": [1.0], "A": [[0.0]]},
            "heun": {
                "s": 2,
                "c": [0.0, 1.0],
                "b": [0.5, 0.5],
                "A": [[0.0, 0.0], [1.0, 0.0]],
            },
        }

    def test_rejects_bad_shapes(self: TestRKTableau) -> None:
        with pytest.raises(ValueError):
            RKTableau(c=[], b=[], A=[])
        with pytest.raises(ValueError):
            RKTableau(c=[0.5], b=[1.0, 0.0], A=[[0.5]])
        with pytest.raises(ValueError):
            RKTableau(c=[0.5, 0.5], b=[0.5, 0.5], A=[[0.5, 0.0]])
        with pytest.raises(ValueError):
            RKTableau(c=[np.nan], b=[1.0], A=[[0.5]])

    def test_from_dict(self: TestRKTableau, test_data: Dict) -> None:
        heun = RKTableau.from_dict(test_data["heun"])
        assert heun.s == 2
        assert heun.to_dict() == test_data["heun"]

        with pytest.raises(ValueError):
            RKTableau.from_dict({"c": [0.0], "b": [1.0]})
        with pytest.raises(ValueError):
            RKTableau.from_dict(dict(test_data["euler"], s=3))

    def test_reversed(self: TestRKTableau) -> None:
        gauss = Catalog.gauss2_tableau()
        rev = gauss.reversed()
        assert rev.c[0] == gauss.c[1]
        assert rev.A[0, 1] == gauss.A[1, 0]
        assert rev.reversed() == gauss

    def test_arrays_are_frozen(self: TestRKTableau) -> None:
        t = Catalog.midpoint_tableau()
        with pytest.raises(ValueError):
            t.A[0, 0] = 1.0


class TestSEIMethod:
    @pytest.fixture(scope="module")
    def test_data(self: TestSEIMethod) -> Dict:
        """
        This immutable fixture stores the expected results of unit tests
        """
        return {
            "Z": SquareMatrix([[0.0, 0.3], [-0.5, 0.0]]),
            "tol": 1e-15,
            "rotation": SquareMatrix([[0.0, 0.1], [-0.1, 0.0]]),
            "abar_rotation": [
                [-0.0386106939, 0.0022316696],
                [-0.0022316696, -0.0386106939],
            ],
            "bbar_scaled_identity": -1.8814588682,
        }

    def test_coefficients_at_zero(self: TestSEIMethod) -> None:
        m = Catalog.get_method("SSSEI3s4")
        Z = SquareMatrix.zeros(2)
        for i in range(m.s):
            assert m.sei_bbar(i, Z) == SquareMatrix.identity(2) * m.tableau.b[i]
            for j in range(m.s):
                assert (
                    m.sei_abar(i, j, Z)
                    == SquareMatrix.identity(2) * m.tableau.A[i, j]
                )

    def test_coefficients(self: TestSEIMethod, test_data: Dict) -> None:
        m = Catalog.get_method("SSSEI2s4")
        Z = test_data["Z"]
        t = m.tableau
        expected = (Z * (t.c[1] - t.c[0])).expm() * t.A[1, 0]
        assert m.sei_abar(1, 0, Z) == expected
        expected_b = (Z * (1.0 - t.c[0])).expm() * t.b[0]
        assert m.sei_bbar(0, Z) == expected_b

        # zero entries of A stay zero matrices
        composition = Catalog.get_method("SSSEI3s4")
        assert composition.sei_abar(0, 2, Z) == SquareMatrix.zeros(2)

    def test_golden_coefficients(
        self: TestSEIMethod, test_data: Dict
    ) -> None:
        gauss = Catalog.get_method("SSSEI2s4")
        theta = -0.1 * math.sqrt(3.0) / 3.0
        a_12 = (3.0 - 2.0 * math.sqrt(3.0)) / 12.0
        closed_form = a_12 * np.array(
            [
                [math.cos(theta), math.sin(theta)],
                [-math.sin(theta), math.cos(theta)],
            ]
        )
        abar = gauss.sei_abar(0, 1, test_data["rotation"]).entries
        assert np.max(np.abs(abar - closed_form)) <= 1e-15
        assert np.max(
            np.abs(abar - np.array(test_data["abar_rotation"]))
        ) <= 1e-9

        composition = Catalog.get_method("SSSEI3s4")
        b_2 = (-1.0 - 2.0 * 2.0 ** (1.0 / 3.0) - 4.0 ** (1.0 / 3.0)) / 3.0
        bbar = composition.sei_bbar(1, SquareMatrix.identity(2) * 0.2)
        assert bbar.entries[0, 1] == 0.0
        assert bbar.entries[1, 0] == 0.0
        for k in range(2):
            assert bbar.entries[k, k] == pytest.approx(
                b_2 * math.exp(0.1), rel=1e-14
            )
            assert bbar.entries[k, k] == pytest.approx(
                test_data["bbar_scaled_identity"], abs=1e-9
            )

    def test_stage_index_error(self: TestSEIMethod, test_data: Dict) -> None:
        m = Catalog.get_method("SSSEI1s2")
        with pytest.raises(SEIMethod.StageIndexError):
            m.sei_abar(1, 0, test_data["Z"])
        with pytest.raises(SEIMethod.StageIndexError):
            m.sei_bbar(-1, test_data["Z"])
        with pytest.raises(IndexError):
            m.sei_bbar(3, test_data["Z"])

    def test_invalid_method(self: TestSEIMethod) -> None:
        with pytest.raises(ValueError):
            SEIMethod("", Catalog.midpoint_tableau(), 2)
        with pytest.raises(ValueError):
            SEIMethod("mp", Catalog.midpoint_tableau(), 0)
        with pytest.raises(TypeError):
            SEIMethod("mp", {"c": [0.5]}, 2)  # type: ignore[arg-type]

    def test_golden_files(self: TestSEIMethod) -> None:
        expected = {
            "midpoint": Catalog.midpoint_tableau(),
            "gauss2": Catalog.gauss2_tableau(),
            "composition3": Catalog.composition3_tableau(),
        }
        for name, filename in tableau_files.items():
            m = SEIMethod.from_json_file(filename)
            assert m.name == name
            assert not m.classical
            assert np.allclose(m.tableau.c, expected[name].c, atol=1e-15)
            assert np.allclose(m.tableau.b, expected[name].b, atol=1e-15)
            assert np.allclose(m.tableau.A, expected[name].A, atol=1e-15)

    def test_to_json_file(self: TestSEIMethod, tmp_path: Path) -> None:
        m = Catalog.get_method("SSRK2s4")
        filename = str(tmp_path / "gauss.json")
        m.to_json_file(filename)
        data = json.load(open(filename))
        assert data["name"] == "SSRK2s4"
        assert data["classical"] is True
        loaded = SEIMethod.from_json_file(filename)
        assert loaded.tableau == m.tableau
        assert loaded.order == 4

    def test_from_json_errors(self: TestSEIMethod) -> None:
        with pytest.raises(json.JSONDecodeError):
            SEIMethod.from_json("{not json")
        with pytest.raises(ValueError):
            SEIMethod.from_json('{"c": [0.5], "b": [1.0], "A": [[0.5]]}')
        with pytest.raises(FileNotFoundError):
            SEIMethod.from_json_file("no/such/tableau.json")
