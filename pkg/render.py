#!/usr/bin/env python3
"""
Plot a pysei convergence or energy CSV:
log10(GE) against log10(t_end / h), or log10(GEH) against log10(t_end).
"""
import argparse
import csv
import math
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def load_rows(filename: str) -> list[dict[str, str]]:
    with open(filename, newline="") as csv_file:
        return list(csv.DictReader(csv_file))


def series(
    rows: list[dict[str, str]], x_col: str, y_col: str
) -> dict[str, tuple[list[float], list[float]]]:
    """
    Group (x, y) points per method, skipping divergent and empty cells
    """
    points: dict[str, tuple[list[float], list[float]]] = defaultdict(
        lambda: ([], [])
    )
    for row in rows:
        if row[y_col] in ("", "divergent"):
            continue
        y = float(row[y_col])
        if y <= 0.0:
            continue
        h, t_end = float(row["h"]), float(row["t_end"])
        x = t_end / h if x_col == "steps" else t_end
        points[row["method"]][0].append(math.log10(x))
        points[row["method"]][1].append(math.log10(y))
    return points


def main() -> None:
    parser = argparse.ArgumentParser(
        description="Plot a pysei results CSV.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("csv", help="Convergence or energy CSV file.")
    parser.add_argument(
        "--kind",
        help="Plot efficiency (GE vs t_end/h) or energy (GEH vs t_end).",
        choices=["convergence", "energy"],
        default="convergence",
    )
    parser.add_argument(
        "--out", help="Image filename.", type=str, default="pysei.png"
    )
    args = parser.parse_args()

    rows = load_rows(args.csv)
    if args.kind == "convergence":
        points = series(rows, "steps", "GE")
        xlabel, ylabel = "log10(t_end/h)", "log10(GE)"
    else:
        points = series(rows, "t_end", "GEH")
        xlabel, ylabel = "log10(t_end)", "log10(GEH)"

    markers = ["o", "s", "^", "v", "D", "x", "+", "*"]
    for n, (method, (xs, ys)) in enumerate(points.items()):
        plt.plot(xs, ys, marker=markers[n % len(markers)], label=method)
    plt.xlabel(xlabel)
    plt.ylabel(ylabel)
    plt.legend()
    plt.grid(True)
    plt.savefig(args.out)


if __name__ == "__main__":
    main()
