"""Success rate and wall time of the fiducial search over dimensions and seeds."""

import argparse
import json
import time
from dataclasses import dataclass, field

from sicforge.errors import NoConvergence
from sicforge.search import SearchConfig, search


@dataclass
class BenchConfig:
    dims: list[int] = field(default_factory=lambda: [2, 3, 5, 7, 11])
    seeds: int = 20
    restarts: int = 10
    target: float = 1e-10


def run(cfg: BenchConfig) -> list[dict]:
    rows = []
    for d in cfg.dims:
        hits, restarts_used, worst = 0, [], 0.0
        start = time.perf_counter()
        for seed in range(cfg.seeds):
            try:
                res = search(SearchConfig(d, restarts=cfg.restarts, seed=seed, target=cfg.target))
                hits += 1
                restarts_used.append(res.restart + 1)
                worst = max(worst, res.deviation)
            except NoConvergence:
                pass
        rows.append({"dim": d, "success": hits / cfg.seeds, "worst_deviation": worst,
                     "mean_restarts": sum(restarts_used) / max(len(restarts_used), 1),
                     "seconds": round(time.perf_counter() - start, 2)})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3, 5, 7, 11])
    ap.add_argument("--seeds", type=int, default=20)
    args = ap.parse_args()
    for row in run(BenchConfig(args.dims, args.seeds)):
        print(json.dumps(row))


if __name__ == "__main__":
    main()
