"""Seeded random generators shared by the property and acceptance tests."""
from __future__ import annotations

import random
from functools import lru_cache

from toricjets import lattice as lat
from toricjets.divisor import TCartierDivisor
from toricjets.polyhedral import Polytope, lattice_points


def random_polytope(rng: random.Random, dim: int, max_points: int = 60) -> Polytope | None:
    box = 4 if dim == 2 else 3
    npts = rng.randint(dim + 1, dim + 4)
    pts = {tuple(rng.randint(0, box) for _ in range(dim)) for _ in range(npts)}
    if len(pts) < dim + 1:
        return None
    if lat.rank([list(lat.sub(p, next(iter(pts)))) for p in pts]) < dim:
        return None
    P = Polytope(sorted(pts))
    if len(lattice_points(P)) > max_points:
        return None
    return P


@lru_cache(maxsize=None)
def ample_corpus(count: int = 100, seed: int = 20240601) -> tuple[TCartierDivisor, ...]:
    """count ample polytope divisors of dim 2 and 3 (half each)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        dim = 2 if len(out) % 2 == 0 else 3
        P = random_polytope(rng, dim)
        if P is not None:
            out.append(TCartierDivisor.from_polytope(P))
    return tuple(out)


def random_pointed_cone(rng: random.Random, dim: int, bound: int = 8, max_rays: int | None = None):
    """Rays of a random full-dimensional pointed cone (coordinates <= bound)."""
    from toricjets.polyhedral import Cone

    max_rays = max_rays or dim + 2
    while True:
        m = rng.randint(dim, max_rays)
        gens = [tuple(rng.randint(-bound, bound) for _ in range(dim)) for _ in range(m)]
        if any(not any(g) for g in gens):
            continue
        C = Cone(gens)
        if C.is_full_dimensional and C.is_pointed:
            return C


def random_unimodular(rng: random.Random, n: int, steps: int = 6) -> list[list[int]]:
    U = lat.identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        if rng.random() < 0.3:
            U[i], U[j] = U[j], U[i]
    return U
