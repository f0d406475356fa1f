from __future__ import annotations

import csv
import logging
import math
import sys
from typing import Any, Iterable, Optional, TextIO

from .settings import Settings

logger = logging.getLogger(__name__)


def _fmt(value: float) -> str:
    return Settings.CSV_FLOAT_FORMAT.format(value)


class MetricRow:
    """
    One (method, problem, h, t_end) measurement
    """

    def __init__(
        self: MetricRow,
        method: str,
        problem: str,
        h: float,
        t_end: float,
        GE: Optional[float] = None,
        GEH: Optional[float] = None,
        wall_time: Optional[float] = None,
        n_steps: int = 0,
        mean_fp_iters: float = 0.0,
        divergent: bool = False,
    ) -> None:
        for name, value in (("GE", GE), ("GEH", GEH)):
            if value is None or divergent:
                continue
            if not math.isfinite(value) or value < 0.0:
                raise ValueError(
                    f"{name} must be finite and nonnegative, not {value}, "
                    f"mark the row divergent instead"
                )
        self.method: str = method
        self.problem: str = problem
        self.h: float = float(h)
        self.t_end: float = float(t_end)
        self.GE: Optional[float] = GE
        self.GEH: Optional[float] = GEH
        self.wall_time: Optional[float] = wall_time
        self.n_steps: int = int(n_steps)
        self.mean_fp_iters: float = float(mean_fp_iters)
        self.divergent: bool = bool(divergent)

    def __str__(self: MetricRow) -> str:
        return ",".join(self.to_csv_row())

    def _error(self: MetricRow, value: Optional[float]) -> str:
        if self.divergent:
            return Settings.DIVERGENT
        if value is None:
            return ""
        return _fmt(value)

    def to_csv_row(self: MetricRow) -> list[str]:
        """
        Return the row in METRIC_COLUMNS order

        :rtype: List
        """
        return [
            self.method,
            self.problem,
            _fmt(self.h),
            _fmt(self.t_end),
            self._error(self.GE),
            self._error(self.GEH),
            "" if self.wall_time is None else _fmt(self.wall_time),
            str(self.n_steps),
            _fmt(self.mean_fp_iters),
        ]


class VerifyRow:
    """
    One pass/fail line of the verify experiment
    """

    def __init__(
        self: VerifyRow,
        method: str,
        check: str,
        sample: str,
        residual: float,
        threshold: float,
    ) -> None:
        self.method: str = method
        self.check: str = check
        self.sample: str = sample
        self.residual: float = float(residual)
        self.threshold: float = float(threshold)

    @property
    def passed(self: VerifyRow) -> bool:
        return math.isfinite(self.residual) and self.residual <= self.threshold

    def __str__(self: VerifyRow) -> str:
        return ",".join(self.to_csv_row())

    def to_csv_row(self: VerifyRow) -> list[str]:
        """
        Return the row in VERIFY_COLUMNS order

        :rtype: List
        """
        return [
            self.method,
            self.check,
            self.sample,
            _fmt(self.residual),
            _fmt(self.threshold),
            str(self.passed).lower(),
        ]


class Results:
    """
    CSV output of experiment rows
    """

    log_prefix: str = __name__

    @staticmethod
    def write_csv(
        header: list[str], rows: Iterable[Any], output_path: str
    ) -> None:
        """
        Write rows with a header to output_path, or to stdout for "-"

        :param List header: Column names
        :param Iterable rows: MetricRow or VerifyRow objects
        :param str output_path: CSV filename or "-"
        :rtype: None
        """
        if output_path == "-":
            Results._write(header, rows, sys.stdout)
            return
        try:
            with open(output_path, "w", newline="") as csv_file:
                Results._write(header, rows, csv_file)
        except Exception as e:
            logger.error(
                f"{Results.log_prefix}: Couldn't write results file "
                f"{output_path}"
            )
            raise e
        logger.info(f"{Results.log_prefix}: Wrote results to {output_path}")

    @staticmethod
    def _write(header: list[str], rows: Iterable[Any], stream: TextIO) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row.to_csv_row())

    @staticmethod
    def write_metrics(rows: list[MetricRow], output_path: str) -> None:
        Results.write_csv(Settings.METRIC_COLUMNS, rows, output_path)

    @staticmethod
    def write_verify(rows: list[VerifyRow], output_path: str) -> None:
        Results.write_csv(Settings.VERIFY_COLUMNS, rows, output_path)
