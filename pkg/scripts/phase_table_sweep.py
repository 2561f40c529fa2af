"""Sweep t over [0, pi/9] and compare the five reference-triple phases with their closed forms.

Writes CSV rows: t, triple, observed, predicted, error.
"""

import argparse
import csv
import sys
from dataclasses import dataclass

import numpy as np

from sicforge import dim3


@dataclass
class SweepConfig:
    points: int = 50
    t_max: float = np.pi / 9


def sweep(cfg: SweepConfig):
    for t in np.linspace(0, cfg.t_max, cfg.points):
        got, want = dim3.table_phases(t), dim3.predicted_table_phases(t)
        for name in dim3.TABLE_TRIPLES:
            yield {"t": t, "triple": name, "observed": got[name], "predicted": want[name],
                   "error": abs(got[name] - want[name])}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=50)
    args = ap.parse_args()
    w = csv.DictWriter(sys.stdout, fieldnames=["t", "triple", "observed", "predicted", "error"])
    w.writeheader()
    worst = 0.0
    for row in sweep(SweepConfig(args.points)):
        worst = max(worst, row["error"])
        w.writerow({k: f"{v:.12g}" if isinstance(v, float) else v for k, v in row.items()})
    print(f"max error {worst:.3e}", file=sys.stderr)


if __name__ == "__main__":
    main()
