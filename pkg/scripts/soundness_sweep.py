"""Certified k versus oracle k on random ample polytopes.

The certificate is only a sufficient condition; this sweep measures how far
below the oracle's answer it lands, and would report any case where a
certified k fails the oracle.

    python3 scripts/soundness_sweep.py --count 60 --kmax 3
"""
from __future__ import annotations

import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass

from toricjets import jets
from toricjets.divisor import from_polytope
from toricjets.polyhedral import Polytope, lattice_points
from toricjets import lattice as lat


@dataclass
class SweepConfig:
    count: int = 60
    seed: int = 7
    kmax: int = 3
    max_points: int = 60


def random_polytope(rng: random.Random, dim: int, max_points: int) -> Polytope | None:
    box = 4 if dim == 2 else 3
    pts = {tuple(rng.randint(0, box) for _ in range(dim)) for _ in range(rng.randint(dim + 1, dim + 4))}
    base = next(iter(pts))
    if len(pts) <= dim or lat.rank([list(lat.sub(p, base)) for p in pts]) < dim:
        return None
    P = Polytope(sorted(pts))
    return P if len(lattice_points(P)) <= max_points else None


def oracle_k(D, kmax: int) -> int:
    k = -1
    while k < kmax and jets.oracle_jet_ample(D, k + 1, k + 2).jet_ample:
        k += 1
    return k


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(SweepConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", dest=name, type=int, default=default)
    cfg = SweepConfig(**vars(ap.parse_args(argv)))

    rng = random.Random(cfg.seed)
    gaps: Counter = Counter()
    bad = []
    done = 0
    t0 = time.perf_counter()
    while done < cfg.count:
        dim = 2 + done % 2
        P = random_polytope(rng, dim, cfg.max_points)
        if P is None:
            continue
        D = from_polytope(P)
        kc = min(jets.max_certified_k(D).k, cfg.kmax)
        ko = oracle_k(D, cfg.kmax)
        if kc > ko:
            bad.append((P.vertices, kc, ko))
        gaps[(dim, ko - kc)] += 1
        done += 1
    print(f"{done} polytopes in {time.perf_counter() - t0:.1f}s, k capped at {cfg.kmax}")
    print("dim  oracle_k - certified_k  count")
    for (dim, g), c in sorted(gaps.items()):
        print(f"{dim:>3}  {g:>21}  {c:>5}")
    print(f"certified above oracle: {len(bad)}")
    for b in bad:
        print("  ", b)


if __name__ == "__main__":
    main()
