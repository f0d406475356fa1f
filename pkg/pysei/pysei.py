from __future__ import annotations

import logging

from .config import ExperimentConfig
from .experiments import Experiments
from .logs import Logs
from .results import MetricRow, Results, VerifyRow

logger = logging.getLogger(__name__)


class PySei:
    def __init__(self: PySei, config: ExperimentConfig) -> None:
        Logs.setup()
        self.config: ExperimentConfig = config
        self.experiments: Experiments = Experiments(self.config)
        self.rows: list[MetricRow] | list[VerifyRow] = []

    def run(self: PySei) -> bool:
        """
        Run the experiment and write its CSV. Return False if any row
        diverged or any check failed.

        :rtype: bool
        """
        self.rows = self.experiments.run()
        if self.config.experiment == "verify":
            verify_rows = [r for r in self.rows if isinstance(r, VerifyRow)]
            Results.write_verify(verify_rows, self.config.output_path)
            return all(r.passed for r in verify_rows)

        metric_rows = [r for r in self.rows if isinstance(r, MetricRow)]
        Results.write_metrics(metric_rows, self.config.output_path)
        divergent = [r for r in metric_rows if r.divergent]
        if divergent:
            logger.error(
                f"{__name__}: {len(divergent)} of {len(metric_rows)} rows "
                f"diverged"
            )
        return not divergent
