#!/usr/bin/env python3
"""Plot CSV output from the humbertq CLI (outage, detect, or laplace sweeps).

The first column is taken as the x axis and the second as the curve. When
mc_estimate/mc_stderr columns are present the Monte Carlo estimates are
overlaid with error bars. Without matplotlib installed the script falls back
to printing a textual summary of the curve.
"""

import argparse
import csv
import sys


def read_curve(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise SystemExit(f"{path}: no data rows")
    fields = list(rows[0].keys())
    if len(fields) < 2:
        raise SystemExit(f"{path}: expected at least two columns")
    x_name, y_name = fields[0], fields[1]
    xs = [float(r[x_name]) for r in rows]
    ys = [float(r[y_name]) for r in rows]
    mc = None
    if "mc_estimate" in fields and "mc_stderr" in fields:
        mc = (
            [float(r["mc_estimate"]) for r in rows],
            [float(r["mc_stderr"]) for r in rows],
        )
    return x_name, y_name, xs, ys, mc


def summarize(path, x_name, y_name, xs, ys, mc):
    print(f"{path}: {len(xs)} points, {x_name} in [{min(xs):g}, {max(xs):g}]")
    print(f"  {y_name}: min {min(ys):.6g}, max {max(ys):.6g}")
    if mc:
        devs = [
            abs(y - m) / s for y, m, s in zip(ys, mc[0], mc[1]) if s > 0
        ]
        if devs:
            print(f"  worst |closed - mc| = {max(devs):.2f} standard errors")
        skipped = len(ys) - len(devs)
        if skipped:
            print(f"  ({skipped} point(s) with zero hits skipped)")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv", nargs="+", help="CSV file(s) produced by the CLI")
    ap.add_argument("-o", "--output", default="curves.png", help="output PNG")
    ap.add_argument("--logy", action="store_true", help="logarithmic y axis")
    ap.add_argument("--title", default="", help="plot title")
    args = ap.parse_args()

    curves = [(path, *read_curve(path)) for path in args.csv]
    for entry in curves:
        summarize(*entry)

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not available, skipping PNG output", file=sys.stderr)
        return

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for path, x_name, y_name, xs, ys, mc in curves:
        label = f"{path}:{y_name}" if len(curves) > 1 else y_name
        ax.plot(xs, ys, marker=".", label=label)
        if mc:
            ax.errorbar(
                xs,
                mc[0],
                yerr=[3 * s for s in mc[1]],
                fmt="x",
                linestyle="none",
                capsize=3,
                label=f"{label} (MC, 3 s.e.)",
            )
    ax.set_xlabel(curves[0][1])
    ax.set_ylabel(curves[0][2])
    if args.logy:
        ax.set_yscale("log")
    if args.title:
        ax.set_title(args.title)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
