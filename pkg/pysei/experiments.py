from __future__ import annotations

import math
import os
import time
from typing import Callable, Optional

from .catalog import Catalog
from .conditions import Conditions
from .config import ExperimentConfig
from .integrator import Integrator
from .logs import Loggable
from .matfun import SquareMatrix
from .metrics import Metrics
from .probes import Probes
from .problem import ExactSolution, SemilinearProblem, State
from .problems import Problems
from .reference import Reference
from .results import MetricRow, VerifyRow
from .settings import Settings
from .stepper import Stepper
from .tableau import SEIMethod

StepProbe = Callable[[Stepper, SemilinearProblem, State, float], float]


class Experiments(Loggable):
    """
    Runs the convergence, energy, verify and single run experiments for one
    ExperimentConfig. Rows come out ordered by method, h, then t_end, each in
    config order.
    """

    log_prefix: str = __name__

    def __init__(self: Experiments, config: ExperimentConfig) -> None:
        self.config: ExperimentConfig = config
        self.problem: SemilinearProblem = Problems.from_label(
            config.problem, config.params
        )
        self.methods: list[SEIMethod] = self.resolve_methods()
        self.steppers: dict[str, Stepper] = {
            m.name: Stepper(m, config.solver) for m in self.methods
        }

    def resolve_methods(self: Experiments) -> list[SEIMethod]:
        """
        Return the configured methods, built-in ones by name followed by any
        loaded tableau files not already named

        :raises Catalog.UnknownMethod: If a name matches no method
        :rtype: List
        """
        available: dict[str, SEIMethod] = Catalog.builtin_methods()
        loaded: list[SEIMethod] = []
        catalog = Catalog()
        for filename in self.config.tableau_files:
            method = catalog.load_method(filename)
            available[method.name] = method
            loaded.append(method)

        methods: list[SEIMethod] = []
        for name in self.config.methods:
            if name not in available:
                raise Catalog.UnknownMethod(name)
            methods.append(available[name])
        for method in loaded:
            if method not in methods:
                methods.append(method)
        return methods

    def run(self: Experiments) -> list[MetricRow] | list[VerifyRow]:
        """
        Run the configured experiment

        :rtype: List
        """
        self._log(
            level=Settings.LOG_INFO,
            msg=f"Running {self.config.experiment} on {self.problem} "
            f"with {[m.name for m in self.methods]}",
        )
        match self.config.experiment:
            case "convergence":
                return self.run_convergence()
            case "energy":
                return self.run_energy()
            case "verify":
                return self.run_verify()
            case "run":
                return self.run_single()
        raise ValueError(f"Unknown experiment {self.config.experiment}")

    def measure(
        self: Experiments,
        method: SEIMethod,
        h: float,
        t_end: float,
        reference: Optional[ExactSolution],
        trajectory_out: Optional[str] = None,
    ) -> MetricRow:
        """
        Integrate one (method, h, t_end) and return its metrics, a divergent
        row if the stage solver fails

        :param SEIMethod method: Method
        :param float h: Step size
        :param float t_end: Final time
        :param Callable reference: GE is left empty without one
        :param str trajectory_out: Also write the trajectory here
        :rtype: MetricRow
        """
        p = self.problem
        n_steps = Integrator.step_count(p.t0, t_end, h)
        start = time.perf_counter()
        try:
            traj = Integrator.integrate(
                self.steppers[method.name], p, p.y0, h, t_end
            )
        except Stepper.NonConvergence as e:
            self._log(
                level=Settings.LOG_WARNING,
                msg=f"{method} h={h} t_end={t_end} marked divergent: {e}",
            )
            return MetricRow(
                method=method.name,
                problem=p.label,
                h=h,
                t_end=t_end,
                n_steps=n_steps,
                divergent=True,
            )
        wall_time = time.perf_counter() - start

        GE = (
            Metrics.global_error(traj, reference)
            if reference is not None
            else None
        )
        GEH = (
            Metrics.energy_error(traj, p.invariant_H)
            if p.invariant_H is not None
            else None
        )
        divergent = any(
            v is not None and not math.isfinite(v) for v in (GE, GEH)
        )
        if divergent:
            self._log(
                level=Settings.LOG_WARNING,
                msg=f"{method} h={h} t_end={t_end} blew up, marked divergent",
            )
        if trajectory_out is not None:
            traj.to_csv_file(trajectory_out, problem=p)

        row = MetricRow(
            method=method.name,
            problem=p.label,
            h=h,
            t_end=t_end,
            GE=GE,
            GEH=GEH,
            wall_time=wall_time if self.config.timing else None,
            n_steps=traj.n_steps,
            mean_fp_iters=traj.mean_fp_iters(),
            divergent=divergent,
        )
        self._log(level=Settings.LOG_DEBUG, msg=f"{row}")
        return row

    def references(
        self: Experiments,
    ) -> dict[tuple[float, float], ExactSolution]:
        """
        Return the reference for every (h, t_end), exact when the problem has
        a closed form, else numeric. A numeric reference built for a smaller
        h is reused by every h whose grid it covers; any other h gets its
        own, refined to at most the spacing of the smallest h's reference.

        :rtype: Dict
        """
        h_ref = min(self.config.h_list) / self.config.reference_refinement
        references: dict[tuple[float, float], ExactSolution] = {}
        for t_end in self.config.t_ends():
            built: list[ExactSolution] = []
            for h in sorted(self.config.h_list):
                reference = next(
                    (
                        r
                        for r in built
                        if not isinstance(r, Reference) or r.covers(h)
                    ),
                    None,
                )
                if reference is None:
                    reference = Reference.for_problem(
                        self.problem,
                        h,
                        t_end,
                        refinement=math.ceil(h / h_ref - Settings.GRID_TOL),
                        settings=self.config.solver,
                    )
                    built.append(reference)
                references[(h, t_end)] = reference
        return references

    def run_convergence(self: Experiments) -> list[MetricRow]:
        """
        GE for every method x h x t_end against the exact or numeric
        reference

        :rtype: List
        """
        references = self.references()
        rows: list[MetricRow] = []
        for method in self.methods:
            for h in self.config.h_list:
                for t_end in self.config.t_ends():
                    rows.append(
                        self.measure(
                            method, h, t_end, references[(h, t_end)]
                        )
                    )
            if len(self.config.t_ends()) == 1:
                errors = [
                    math.inf if r.GE is None or r.divergent else r.GE
                    for r in rows[-len(self.config.h_list) :]
                ]
                self._log(
                    level=Settings.LOG_INFO,
                    msg=f"{method} observed orders "
                    f"{Metrics.estimate_order(errors, self.config.h_list)}",
                )
        return rows

    def run_energy(self: Experiments) -> list[MetricRow]:
        """
        GEH for every method x h x t_end; GE only when an exact solution
        exists

        :raises ValueError: If the problem has no invariant
        :rtype: List
        """
        if self.problem.invariant_H is None:
            raise ValueError(f"Problem {self.problem} has no invariant H")
        rows: list[MetricRow] = []
        for method in self.methods:
            for h in self.config.h_list:
                for t_end in self.config.t_ends():
                    rows.append(
                        self.measure(method, h, t_end, self.problem.exact)
                    )
        return rows

    def run_single(self: Experiments) -> list[MetricRow]:
        """
        Integrate each method x h to each t_end, optionally writing every
        trajectory; GE only when an exact solution exists

        :rtype: List
        """
        combos = [
            (method, h, t_end)
            for method in self.methods
            for h in self.config.h_list
            for t_end in self.config.t_ends()
        ]
        rows: list[MetricRow] = []
        for n, (method, h, t_end) in enumerate(combos):
            out = self.config.trajectory_out
            if out is not None and len(combos) > 1:
                root, ext = os.path.splitext(out)
                out = f"{root}.{method.name}.{n}{ext or '.csv'}"
            rows.append(
                self.measure(method, h, t_end, self.problem.exact, out)
            )
        return rows

    def verify_samples(self: Experiments) -> list[tuple[str, SquareMatrix]]:
        """
        Z samples for the SEI checks: zero, +-hM for each configured h when
        the linear part is Hamiltonian, and seeded random Hamiltonian
        matrices

        :rtype: List
        """
        p = self.problem
        hM_list = (
            [p.M * h for h in self.config.h_list]
            if p.is_hamiltonian(Settings.MATRIX_TOL)
            else []
        )
        return Conditions.default_samples(hM_list, d=p.d)

    def run_verify(self: Experiments) -> list[VerifyRow]:
        """
        Condition checks, round trip and Jacobian probes for every method

        :rtype: List
        """
        p = self.problem
        J = p.J if p.J is not None else SquareMatrix.canonical_j(p.d)
        samples = self.verify_samples()
        y0_norm = float(max(abs(v) for v in p.y0))
        rows: list[VerifyRow] = []
        for method in self.methods:
            for report in Conditions.verify_method(method, samples, J):
                rows.append(
                    VerifyRow(
                        method=method.name,
                        check=report.condition_name,
                        sample=report.sample,
                        residual=report.residual,
                        threshold=report.threshold,
                    )
                )

            stepper = self.steppers[method.name]
            for h in self.config.h_list:
                rows.append(
                    VerifyRow(
                        method=method.name,
                        check="round_trip",
                        sample=f"{p.label},h={h!r}",
                        residual=self.probe(
                            Probes.round_trip_defect, stepper, h
                        ),
                        threshold=Settings.ROUNDTRIP_FACTOR
                        * self.config.solver.fp_tol
                        * y0_norm,
                    )
                )
                if p.J is None:
                    continue
                rows.append(
                    VerifyRow(
                        method=method.name,
                        check="jacobian_symplecticity",
                        sample=f"{p.label},h={h!r}",
                        residual=self.probe(
                            Probes.jacobian_symplecticity_defect, stepper, h
                        ),
                        threshold=Settings.JACOBIAN_TOL,
                    )
                )

        failed = [row for row in rows if not row.passed]
        for row in failed:
            self._log(level=Settings.LOG_WARNING, msg=f"Failed: {row}")
        self._log(
            level=Settings.LOG_INFO,
            msg=f"Verify: {len(rows) - len(failed)} of {len(rows)} checks "
            f"passed",
        )
        return rows

    def probe(
        self: Experiments, check: StepProbe, stepper: Stepper, h: float
    ) -> float:
        """
        Run a step map probe, a stage solver failure counts as infinite defect
        """
        try:
            return float(check(stepper, self.problem, self.problem.y0, h))
        except Stepper.NonConvergence as e:
            self._log(level=Settings.LOG_WARNING, msg=f"{e}")
            return math.inf
