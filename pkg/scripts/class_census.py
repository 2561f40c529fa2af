"""Conjugacy-class census of SL(2,p) and SL(2,p) x| Z_p^2, with timings, as JSON."""

import argparse
import json
import time
from dataclasses import dataclass, field

from sicforge import symplectic as sp


@dataclass
class CensusConfig:
    primes: list[int] = field(default_factory=lambda: [3, 5, 7, 11])
    kinds: tuple[str, ...] = ("SL", "SL_affine")


def run(cfg: CensusConfig) -> list[dict]:
    out = []
    for p in cfg.primes:
        for kind in cfg.kinds:
            start = time.perf_counter()
            census = sp.class_census(p, kind)
            out.append({"p": p, "group": kind, "n_classes": len(census),
                        "group_order": sp.group_order(p, kind), "seconds": round(time.perf_counter() - start, 3),
                        "classes": sp.census_to_json(census)})
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs="+", default=[3, 5, 7, 11])
    args = ap.parse_args()
    print(json.dumps(run(CensusConfig(args.primes)), indent=1))


if __name__ == "__main__":
    main()
