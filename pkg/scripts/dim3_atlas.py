"""Atlas of the d = 3 family: canonical t, class, phi_min, orbit size and hidden-SIC count on a t-grid.

Also classifies fiducials found by numerical search, which land on the family.
"""

import argparse
import json
from dataclasses import dataclass

import numpy as np

from sicforge import dim3
from sicforge.search import SearchConfig, search


@dataclass
class AtlasConfig:
    points: int = 13
    t_max: float = 2 * np.pi / 3
    searches: int = 5


def run(cfg: AtlasConfig):
    for t in np.linspace(0, cfg.t_max, cfg.points):
        yield {"source": "grid", **dim3.atlas_record(t)}
    for seed in range(cfg.searches):
        res = search(SearchConfig(3, seed=seed))
        fp = dim3.identify_fiducial(res.vector)
        yield {"source": f"search seed {seed}", "canonical_t": fp.canonical_t, "class_rep": fp.class_rep,
               "phi_min": fp.phi_min, "deviation": res.deviation}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=13)
    ap.add_argument("--searches", type=int, default=5)
    args = ap.parse_args()
    for rec in run(AtlasConfig(args.points, searches=args.searches)):
        print(json.dumps({k: round(v, 10) if isinstance(v, float) else v for k, v in rec.items()}))


if __name__ == "__main__":
    main()
