from __future__ import annotations

import json
import logging
from fractions import Fraction
from io import TextIOWrapper
from typing import Any, Optional

from .catalog import Catalog
from .integrator import Integrator
from .problems import Problems
from .settings import Settings
from .stepper import SolverSettings

logger = logging.getLogger(__name__)


class ExperimentConfig:
    """
    Everything needed to run one experiment, loadable from CLI args or JSON
    """

    log_prefix: str = __name__

    EXPERIMENTS: list[str] = ["convergence", "energy", "verify", "run"]

    KEYS: list[str] = [
        "experiment",
        "problem",
        "params",
        "methods",
        "tableau_files",
        "h_list",
        "t_end",
        "t_end_list",
        "output_path",
        "fp_tol",
        "max_iters",
        "reference_refinement",
        "timing",
        "trajectory_out",
    ]

    # Defaults per (experiment, problem), the benchmark setups
    DEFAULTS: dict[tuple[str, str], dict[str, Any]] = {
        ("convergence", "duffing"): {
            "h_list": [1 / 8, 1 / 16, 1 / 32, 1 / 64],
            "t_end": 20.0,
        },
        ("convergence", "wind"): {
            "h_list": [1 / 8, 1 / 16, 1 / 32, 1 / 64],
            "t_end": 10.0,
        },
        ("energy", "duffing"): {
            "h_list": [1 / 10],
            "t_end_list": [1.0, 10.0, 100.0, 1000.0],
        },
        ("energy", "wind"): {
            "h_list": [1 / 20],
            "t_end_list": [1.0, 10.0, 100.0, 1000.0],
        },
        ("verify", "duffing"): {
            "h_list": [1 / 8, 1 / 16],
            "t_end": 1.0,
        },
        ("verify", "wind"): {
            "h_list": [1 / 8, 1 / 16],
            "t_end": 1.0,
        },
        ("run", "duffing"): {
            "h_list": [1 / 10],
            "t_end": 10.0,
        },
        ("run", "wind"): {
            "h_list": [1 / 20],
            "t_end": 10.0,
        },
    }

    def __init__(
        self: ExperimentConfig,
        experiment: str,
        problem: str = "duffing",
        params: Optional[dict[str, float]] = None,
        methods: Optional[list[str]] = None,
        h_list: Optional[list[float]] = None,
        t_end: Optional[float] = None,
        t_end_list: Optional[list[float]] = None,
        output_path: str = "-",
        solver: Optional[SolverSettings] = None,
        tableau_files: Optional[list[str]] = None,
        reference_refinement: int = Settings.REFERENCE_REFINEMENT,
        timing: bool = True,
        trajectory_out: Optional[str] = None,
    ) -> None:
        if experiment not in ExperimentConfig.EXPERIMENTS:
            raise ValueError(
                f"Unknown experiment {experiment}, expected one of "
                f"{ExperimentConfig.EXPERIMENTS}"
            )
        if problem not in Problems.LABELS:
            raise Problems.UnknownProblem(problem)
        self.experiment: str = experiment
        self.problem: str = problem
        self.params: dict[str, float] = dict(params or {})
        self.methods: list[str] = (
            list(methods)
            if methods
            else list(Catalog.builtin_methods().keys())
        )
        self.tableau_files: list[str] = list(tableau_files or [])
        self.h_list: list[float] = [float(h) for h in (h_list or [])]
        self.t_end: Optional[float] = None if t_end is None else float(t_end)
        self.t_end_list: list[float] = [float(t) for t in (t_end_list or [])]
        self.output_path: str = output_path
        self.solver: SolverSettings = solver or SolverSettings()
        self.reference_refinement: int = int(reference_refinement)
        self.timing: bool = bool(timing)
        self.trajectory_out: Optional[str] = trajectory_out
        self.validate()

    def __str__(self: ExperimentConfig) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def t_ends(self: ExperimentConfig) -> list[float]:
        """
        Return the final times to run to, t_end_list or [t_end]

        :rtype: List
        """
        if self.t_end_list:
            return self.t_end_list
        if self.t_end is not None:
            return [self.t_end]
        return []

    def validate(self: ExperimentConfig) -> None:
        """
        Check the config describes a runnable experiment

        :raises ValueError: If h_list is empty, no t_end is set or a
            (t_end, h) pair doesn't give an integer number of steps
        :rtype: None
        """
        if not self.h_list:
            raise ValueError("h_list must hold at least one step size")
        if not self.t_ends():
            raise ValueError(f"{self.experiment} needs t_end or t_end_list")
        if self.reference_refinement < 1:
            raise ValueError(
                f"reference_refinement must be >= 1, not "
                f"{self.reference_refinement}"
            )
        for t_end in self.t_ends():
            for h in self.h_list:
                Integrator.step_count(0.0, t_end, h)

        known = list(Catalog.builtin_methods().keys())
        if not self.tableau_files:
            for name in self.methods:
                if name not in known:
                    raise Catalog.UnknownMethod(name)

    @staticmethod
    def parse_h(text: str) -> float:
        """
        Parse a step size written as a decimal or a fraction, e.g. 1/16

        :param str text: Step size
        :rtype: float
        """
        return float(Fraction(text.strip()))

    @staticmethod
    def parse_list(text: str) -> list[float]:
        """
        Parse a comma separated list of step sizes or times

        :param str text: e.g. 1/8,1/16,1/32
        :rtype: List
        """
        return [
            ExperimentConfig.parse_h(item)
            for item in text.split(",")
            if item.strip()
        ]

    def to_dict(self: ExperimentConfig) -> dict[str, Any]:
        """
        Return the config as a dict, the JSON config file layout

        :rtype: Dict
        """
        return {
            "experiment": self.experiment,
            "problem": self.problem,
            "params": self.params,
            "methods": self.methods,
            "tableau_files": self.tableau_files,
            "h_list": self.h_list,
            "t_end": self.t_end,
            "t_end_list": self.t_end_list,
            "output_path": self.output_path,
            "fp_tol": self.solver.fp_tol,
            "max_iters": self.solver.max_iters,
            "reference_refinement": self.reference_refinement,
            "timing": self.timing,
            "trajectory_out": self.trajectory_out,
        }

    @staticmethod
    def from_dict(data: dict[str, Any]) -> ExperimentConfig:
        """
        Return a config from a dict, filling unset fields with the defaults
        of the experiment on its problem. An explicit t_end replaces a
        default t_end_list and an explicit t_end_list a default t_end.

        :param Dict data: Config keys as written by to_dict
        :raises ValueError: If the experiment or a key is unknown
        :raises Problems.UnknownProblem: If the problem is unknown
        :rtype: ExperimentConfig
        """
        if "experiment" not in data:
            raise ValueError("Config must name an experiment")
        experiment = data["experiment"]
        if experiment not in ExperimentConfig.EXPERIMENTS:
            raise ValueError(
                f"Unknown experiment {experiment}, expected one of "
                f"{ExperimentConfig.EXPERIMENTS}"
            )
        unknown = set(data.keys()) - set(ExperimentConfig.KEYS)
        if unknown:
            raise ValueError(f"Unknown config keys {sorted(unknown)}")

        given: dict[str, Any] = {
            k: v for k, v in data.items() if v is not None and v != []
        }
        problem = given.get("problem", "duffing")
        if problem not in Problems.LABELS:
            raise Problems.UnknownProblem(problem)

        values: dict[str, Any] = dict(
            ExperimentConfig.DEFAULTS[(experiment, problem)]
        )
        if "t_end" in given:
            values.pop("t_end_list", None)
        if "t_end_list" in given:
            values.pop("t_end", None)
        values.update(given)

        h_list = [
            ExperimentConfig.parse_h(h) if isinstance(h, str) else float(h)
            for h in values.get("h_list", [])
        ]
        return ExperimentConfig(
            experiment=experiment,
            problem=problem,
            params=values.get("params"),
            methods=values.get("methods"),
            h_list=h_list,
            t_end=values.get("t_end"),
            t_end_list=values.get("t_end_list"),
            output_path=values.get("output_path", "-"),
            solver=SolverSettings(
                fp_tol=values.get("fp_tol", Settings.FP_TOL),
                max_iters=values.get("max_iters", Settings.MAX_ITERS),
            ),
            tableau_files=values.get("tableau_files"),
            reference_refinement=values.get(
                "reference_refinement", Settings.REFERENCE_REFINEMENT
            ),
            timing=values.get("timing", True),
            trajectory_out=values.get("trajectory_out"),
        )

    @staticmethod
    def from_json(json_data: str) -> ExperimentConfig:
        """
        Return a config from a JSON string

        :param str json_data: JSON string to parse
        :rtype: ExperimentConfig
        """
        data: dict
        try:
            data = json.loads(json_data)
        except Exception as e:
            logger.error(
                f"{ExperimentConfig.log_prefix}: Couldn't parse config "
                f"string as JSON: {json_data}"
            )
            raise e
        return ExperimentConfig.from_dict(data)

    @staticmethod
    def from_json_file(filename: str) -> ExperimentConfig:
        """
        Return a config from the contents of a JSON file

        :param str filename: JSON filename to load
        :rtype: ExperimentConfig
        """
        json_file: TextIOWrapper
        json_data: str

        try:
            json_file = open(filename, "r")
            json_data = json_file.read()
        except Exception as e:
            logger.error(
                f"{ExperimentConfig.log_prefix}: Couldn't open config file "
                f"{filename}"
            )
            raise e

        json_file.close()
        return ExperimentConfig.from_json(json_data)
