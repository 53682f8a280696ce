"""Generators for the example families used in tests and by ``gen``.

``example_3_1`` is the simplex family whose vertex at the origin has a
singular cone with Gamma = n - 2 - (n - 2)/r; ``weighted_projective`` builds
the generator polytope of P(a_0, ..., a_n) inside its hyperplane lattice.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, lcm
from functools import reduce
from typing import Sequence

from . import lattice as lat
from .divisor import TCartierDivisor
from .polyhedral import Polytope


class ExampleError(ValueError):
    pass


FAMILIES = ("example31", "wps", "simplex", "cube", "hirzebruch")


def _unit(n: int, i: int) -> tuple:
    return tuple(int(j == i) for j in range(n))


@dataclass(frozen=True)
class Example31:
    n: int
    r: int
    k: int
    P: Polytope
    D: TCartierDivisor
    G: TCartierDivisor
    a: tuple

    @property
    def multiplier(self) -> int:
        return self.k + self.n - 3

    def box_point(self, j: int = 1) -> tuple:
        """a_j = e_1 + ... + e_{n-1} + j e_n, a lattice point of the
        fundamental parallelepiped of the vertex-0 cone (0 < j < r)."""
        return tuple([1] * (self.n - 1) + [j])

    def witness(self) -> tuple:
        """(k - 1) e_1 + a_1, the exponent where (k + n - 3) D fails."""
        return lat.add(lat.scale(self.k - 1, _unit(self.n, 0)), self.box_point(1))


def example_3_1(n: int, r: int, k: int) -> Example31:
    """P = conv(0, e_1, ..., e_{n-1}, a) with a = e_1 + ... + e_{n-1} + r e_n,
    its divisor D and G = (k + n - 3) D.

    For n = 2, k = 1 the multiplier is 0 and G is the trivial divisor.
    """
    if n < 2:
        raise ExampleError("need n >= 2")
    if r <= n - 2:
        raise ExampleError("need r > n - 2")
    if k < 1:
        raise ExampleError("need k >= 1")
    a = tuple([1] * (n - 1) + [r])
    verts = [tuple(0 for _ in range(n))] + [_unit(n, i) for i in range(n - 1)] + [a]
    P = Polytope(verts)
    D = TCartierDivisor.from_polytope(P)
    G = (k + n - 3) * D
    return Example31(n, r, k, P, D, G, a)


@dataclass(frozen=True)
class WPSData:
    weights: tuple
    l: int
    h: int
    basis: tuple
    polytope: Polytope
    # vertex i of the polytope is (l / a_i) e_i in the hyperplane
    edge_formula: dict = field(hash=False, compare=False)


def check_reduced(weights: Sequence[int]) -> None:
    for j in range(len(weights)):
        rest = [w for i, w in enumerate(weights) if i != j]
        if reduce(gcd, rest, 0) != 1:
            raise ExampleError(f"weights not reduced: gcd of {tuple(rest)} (dropping index {j}) is not 1")


def weighted_projective_data(weights: Sequence[int]) -> WPSData:
    a = tuple(int(x) for x in weights)
    if len(a) < 3:
        raise ExampleError("need at least three weights")
    if any(x < 1 for x in a):
        raise ExampleError("weights must be positive")
    check_reduced(a)
    n1 = len(a)
    l = reduce(lcm, a, 1)
    h = max(lcm(a[i], a[j]) for i, j in itertools.combinations(range(n1), 2))
    B = lat.integer_kernel([list(a)], n1)  # rows span the hyperplane lattice
    Bt = lat.transpose(B)
    verts3 = [lat.scale(l // a[i], _unit(n1, i)) for i in range(n1)]
    coords = []
    for v in verts3:
        c = lat.solve(Bt, lat.sub(v, verts3[0]))
        if c is None or any(x.denominator != 1 for x in c):
            raise AssertionError("vertex difference outside the hyperplane lattice")
        coords.append(tuple(int(x) for x in c))
    edges = {(i, j): l // lcm(a[i], a[j]) for i, j in itertools.combinations(range(n1), 2)}
    return WPSData(a, l, h, tuple(tuple(r) for r in B), Polytope(coords), edges)


def weighted_projective(weights: Sequence[int]) -> Polytope:
    """Generator polytope of P(a_0, ..., a_n) in the HNF basis of its lattice."""
    return weighted_projective_data(weights).polytope


def simplex(dim: int, m: int = 1) -> Polytope:
    if dim < 1 or m < 1:
        raise ExampleError("need dim >= 1 and m >= 1")
    return Polytope([tuple(0 for _ in range(dim))] + [lat.scale(m, _unit(dim, i)) for i in range(dim)])


def cube(dim: int, sides: Sequence[int] | None = None) -> Polytope:
    """Lattice box [0, s_1] x ... x [0, s_dim]."""
    sides = tuple(sides) if sides is not None else (1,) * dim
    if len(sides) != dim or any(s < 1 for s in sides):
        raise ExampleError("need one positive side length per coordinate")
    return Polytope(list(itertools.product(*[(0, s) for s in sides])))


def hirzebruch(a: int, p: int = 1, q: int = 1) -> Polytope:
    """Trapezoid conv(0, (p + a q, 0), (p, q), (0, q)); its normal fan is F_a."""
    if a < 0 or p < 1 or q < 1:
        raise ExampleError("need a >= 0, p >= 1, q >= 1")
    return Polytope([(0, 0), (p + a * q, 0), (p, q), (0, q)])


@dataclass
class ExampleSpec:
    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ExampleError(f"unknown family {self.family!r}")

    def polytope(self) -> Polytope:
        p = self.params
        if self.family == "example31":
            ex = example_3_1(p["n"], p["r"], p.get("k", 1))
            return ex.G.polytope if ex.multiplier > 0 else ex.P
        if self.family == "wps":
            return weighted_projective(p["weights"])
        if self.family == "simplex":
            return simplex(p.get("dim", 2), p.get("m", 1))
        if self.family == "cube":
            return cube(p.get("dim", 2), p.get("sides"))
        return hirzebruch(p.get("a", 1), p.get("p", 1), p.get("q", 1))
