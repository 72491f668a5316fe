# SPDX-License-Identifier: Apache-2.0
"""Plot an MSE sweep CSV against the variance bound.

Usage:
    skewest sweep --n 20 --beta1 1.01 --sigma 0.1 -o sweep.csv
    skewest bound --n 20 --beta1 1.01 --sigma 0.1 -o bound.csv
    python tools/plot_mse.py sweep.csv --bound bound.csv -o mse.png
"""

import argparse
import csv
import sys
from collections import defaultdict


def read_sweep(path):
    series = defaultdict(list)
    with open(path, newline="") as fh:
        rows = (r for r in fh if not r.startswith("#"))
        for row in csv.DictReader(rows):
            series[row["mode"]].append((int(row["alpha"]), float(row["mse"])))
    for points in series.values():
        points.sort()
    return series


def read_bound(path):
    points = []
    with open(path, newline="") as fh:
        rows = (r for r in fh if not r.startswith("#"))
        for row in csv.DictReader(rows):
            points.append((int(row["alpha"]), float(row["crb_beta1"])))
    points.sort()
    return points


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("sweep_csv")
    ap.add_argument("--bound", help="bound-curve CSV to overlay")
    ap.add_argument("-o", "--output", default="mse.png")
    args = ap.parse_args()

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib is required for plotting", file=sys.stderr)
        return 1

    fig, ax = plt.subplots(figsize=(7, 4.5))
    markers = {"GE1": "o", "GE2": "s"}
    for mode, points in sorted(read_sweep(args.sweep_csv).items()):
        xs, ys = zip(*points)
        ax.semilogy(xs, ys, marker=markers.get(mode, "x"), ms=4, lw=1,
                    label=f"{mode} empirical MSE")
    if args.bound:
        xs, ys = zip(*read_bound(args.bound))
        ax.semilogy(xs, ys, "k--", lw=1, label="variance bound")
    ax.set_xlabel(r"subtraction gap $\alpha$")
    ax.set_ylabel(r"MSE of $\hat\beta_1$")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)
    print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
