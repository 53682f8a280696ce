"""Distribution of Gamma_Q / (n - 2) over random pointed cones.

    python3 scripts/gamma_survey.py --dims 3 4 --count 40 --bound 6
"""
from __future__ import annotations

import argparse
import random
import statistics
import time
from dataclasses import dataclass, field

from toricjets.polyhedral import Cone
from toricjets.semigroup import DualConeData


@dataclass
class SurveyConfig:
    dims: list[int] = field(default_factory=lambda: [3, 4])
    count: int = 40
    bound: int = 6
    extra_rays: int = 1
    seed: int = 11


def random_cone(rng: random.Random, dim: int, bound: int, extra: int) -> Cone:
    while True:
        gens = [tuple(rng.randint(-bound, bound) for _ in range(dim)) for _ in range(rng.randint(dim, dim + extra))]
        if any(not any(g) for g in gens):
            continue
        C = Cone(gens)
        if C.is_full_dimensional and C.is_pointed:
            return C


def main(argv=None) -> None:
    d = SurveyConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", type=int, nargs="+", default=d.dims)
    ap.add_argument("--count", type=int, default=d.count)
    ap.add_argument("--bound", type=int, default=d.bound)
    ap.add_argument("--extra-rays", dest="extra_rays", type=int, default=d.extra_rays)
    ap.add_argument("--seed", type=int, default=d.seed)
    cfg = SurveyConfig(**vars(ap.parse_args(argv)))

    rng = random.Random(cfg.seed)
    for dim in cfg.dims:
        ratios, zero, slow = [], 0, 0.0
        for _ in range(cfg.count):
            Q = DualConeData(random_cone(rng, dim, cfg.bound, cfg.extra_rays))
            t0 = time.perf_counter()
            g = Q.gamma
            slow = max(slow, time.perf_counter() - t0)
            zero += g == 0
            if dim > 2:
                ratios.append(g / (dim - 2))
        line = f"dim {dim}: {cfg.count} cones, Gamma = 0 on {zero}"
        if ratios:
            top = max(ratios)
            line += (f", Gamma/(n-2) mean {float(statistics.mean(ratios)):.3f}"
                     f" max {top} ({float(top):.3f})")
        print(line + f", slowest {slow:.2f}s")
        assert all(0 <= x <= 1 for x in ratios)


if __name__ == "__main__":
    main()
