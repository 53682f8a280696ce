"""T-Cartier divisors on complete fans: support functions, intersection
numbers with invariant curves, edge lengths, higher concavity and Seshadri
constants at fixed points.

Conventions: ``D = sum a_rho D_rho`` has support function with
``psi_D(v_rho) = -a_rho`` and polytope ``P_D = {u : <u, v_rho> >= -a_rho}``;
``psi_D`` is concave when D is nef.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import lattice as lat
from .lattice import dot, sub
from .polyhedral import (
    Fan,
    PolyhedralError,
    Polytope,
    Wall,
    dd_rays,
    edges_at_vertex,
    face_projection,
    normal_fan,
)


class DivisorError(ValueError):
    pass


def _as_vec(u) -> tuple:
    return tuple(int(x) if Fraction(x).denominator == 1 else Fraction(x) for x in u)


@dataclass
class TQDivisor:
    """sum a_rho D_rho with rational coefficients, one per ray of the fan."""

    fan: Fan
    coefficients: tuple

    def __post_init__(self):
        self.coefficients = tuple(Fraction(a) for a in self.coefficients)
        if len(self.coefficients) != len(self.fan.rays):
            raise DivisorError("one coefficient per ray is required")

    def __add__(self, other: "TQDivisor") -> "TQDivisor":
        return TQDivisor(self.fan, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __rmul__(self, c) -> "TQDivisor":
        return TQDivisor(self.fan, tuple(c * a for a in self.coefficients))


def q_cartier_local_data(D: TQDivisor) -> dict[int, tuple] | None:
    """Per maximal cone, the u with <u, v_rho> = -a_rho on its rays; None if
    some cone has no such u (D is not Q-Cartier)."""
    out = {}
    for i, cone in enumerate(D.fan.cones):
        A = [list(D.fan.rays[j]) for j in cone]
        b = [-D.coefficients[j] for j in cone]
        x = lat.solve(A, b)
        if x is None:
            return None
        out[i] = _as_vec(x)
    return out


def is_cartier(local: dict[int, tuple] | None) -> bool:
    return local is not None and all(isinstance(x, int) for u in local.values() for x in u)


def canonical_divisor(fan: Fan) -> TQDivisor:
    """K_X = minus the sum of all invariant prime divisors."""
    return TQDivisor(fan, tuple(-1 for _ in fan.rays))


def _polytope_from_halfspaces(fan: Fan, rhs: Sequence[Fraction]) -> Polytope:
    # {u : <u, v_rho> >= rhs_rho}; homogenised as t * (-rhs) + <u, v> >= 0, t >= 0
    d = fan.dim
    rows = [[-r] + list(v) for v, r in zip(fan.rays, rhs)]
    rows.append([1] + [0] * d)
    rays = dd_rays(rows, d + 1)
    verts = []
    for ray, _ in rays:
        if ray[0] <= 0:
            raise DivisorError("polyhedron of the divisor is unbounded")
        verts.append(tuple(Fraction(x, ray[0]) for x in ray[1:]))
    return Polytope(verts)


@dataclass(frozen=True)
class EdgeRow:
    sigma1: int
    sigma2: int
    u1: tuple
    u2: tuple
    tau: tuple
    length: Fraction
    intersection: Fraction


@dataclass
class EdgeReport:
    rows: list[EdgeRow] = field(default_factory=list)

    @property
    def min_length(self) -> Fraction:
        return min(r.length for r in self.rows)


class TCartierDivisor:
    """Cartier T-divisor given by one u_sigma in M per maximal cone."""

    def __init__(self, fan: Fan, local_data: Sequence[Sequence], polytope: Polytope | None = None, check: bool = True):
        self.fan = fan
        self.local = tuple(_as_vec(u) for u in local_data)
        if len(self.local) != len(fan.cones):
            raise DivisorError("one local datum per maximal cone is required")
        if check:
            for u in self.local:
                if not all(isinstance(x, int) for x in u):
                    raise DivisorError(f"local datum {u} is not a lattice point")
            for w in fan.walls:
                diff = sub(self.local[w.sigma1], self.local[w.sigma2])
                if any(dot(diff, fan.rays[j]) != 0 for j in w.tau):
                    raise DivisorError(f"local data disagree on the wall between cones {w.sigma1} and {w.sigma2}")
        self._polytope = polytope

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_polytope(cls, P: Polytope) -> "TCartierDivisor":
        """Divisor of a full-dimensional lattice polytope on its normal fan."""
        if not P.is_lattice:
            raise DivisorError("polytope has non-lattice vertices")
        fan, vmap = normal_fan(P)
        local = [P.vertices[vmap[i]] for i in range(len(fan.cones))]
        return cls(fan, local, polytope=P, check=False)

    @classmethod
    def from_coefficients(cls, D: TQDivisor) -> "TCartierDivisor":
        local = q_cartier_local_data(D)
        if local is None:
            raise DivisorError("divisor is not Q-Cartier")
        if not is_cartier(local):
            raise DivisorError("divisor is Q-Cartier but not Cartier")
        return cls(D.fan, [local[i] for i in range(len(D.fan.cones))])

    # -- basic data ------------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.fan.dim

    def psi_ray(self, j: int) -> Fraction:
        i = next(i for i, c in enumerate(self.fan.cones) if j in c)
        return Fraction(dot(self.local[i], self.fan.rays[j]))

    def coefficients(self) -> TQDivisor:
        return TQDivisor(self.fan, tuple(-self.psi_ray(j) for j in range(len(self.fan.rays))))

    def __add__(self, other: "TCartierDivisor") -> "TCartierDivisor":
        if other.fan is not self.fan:
            raise DivisorError("divisors live on different fans")
        return TCartierDivisor(self.fan, [lat.add(a, b) for a, b in zip(self.local, other.local)], check=False)

    def __rmul__(self, m: int) -> "TCartierDivisor":
        P = self._polytope.dilate(m) if self._polytope is not None and m > 0 else None
        return TCartierDivisor(self.fan, [lat.scale(m, u) for u in self.local], polytope=P, check=False)

    @cached_property
    def wall_intersections(self) -> list[tuple[Wall, Fraction]]:
        return [(w, intersection_number(self, w)) for w in self.fan.walls]

    @cached_property
    def is_ample(self) -> bool:
        if not self.fan.is_complete():
            return False
        return all(x > 0 for _, x in self.wall_intersections) and len(set(self.local)) == len(self.local)

    @cached_property
    def is_nef(self) -> bool:
        return self.fan.is_complete() and all(x >= 0 for _, x in self.wall_intersections)

    @property
    def polytope(self) -> Polytope:
        if self._polytope is None:
            rhs = [self.psi_ray(j) for j in range(len(self.fan.rays))]
            self._polytope = _polytope_from_halfspaces(self.fan, rhs)
        return self._polytope

    @cached_property
    def _halfspaces(self) -> tuple:
        return tuple((v, self.psi_ray(j)) for j, v in enumerate(self.fan.rays))

    def section_exists(self, u: Sequence) -> bool:
        """u in P_D, i.e. <u, v_rho> >= psi_D(v_rho) for every ray."""
        return all(dot(u, v) >= b for v, b in self._halfspaces)

    def require_ample(self) -> None:
        if not self.is_ample:
            raise DivisorError("divisor is not ample")

    def vertex(self, i: int) -> tuple:
        return self.local[i]


# --------------------------------------------------------------------------
# operations


def from_polytope(P: Polytope) -> TCartierDivisor:
    return TCartierDivisor.from_polytope(P)


def psi(D: TCartierDivisor, v: Sequence) -> Fraction:
    """psi_D(v) = <u_sigma, v> for a maximal cone sigma containing v."""
    v = tuple(Fraction(x) for x in v)
    if not any(v):
        return Fraction(0)
    den = 1
    for x in v:
        den = den * x.denominator // lat.gcd(den, x.denominator)
    vi = tuple(int(x * den) for x in v)
    try:
        i = D.fan.locate(vi)
    except PolyhedralError as exc:
        raise DivisorError(str(exc)) from None
    return Fraction(dot(D.local[i], v))


def intersection_number(D: TCartierDivisor, wall: Wall) -> Fraction:
    """D . V(tau) = <u_1 - u_2, v0> * mult(tau) / mult(tau, v0)."""
    fan = D.fan
    if wall.sigma1 == wall.sigma2:
        raise DivisorError("not a wall")
    tau = [fan.rays[j] for j in wall.tau]
    v0 = fan.rays[wall.v0]
    diff = sub(D.local[wall.sigma1], D.local[wall.sigma2])
    return Fraction(dot(diff, v0) * lat.multiplicity(tau), lat.multiplicity(tau + [v0]))


def edge_lengths(D: TCartierDivisor) -> EdgeReport:
    """Lattice length of each edge of P_D next to the matching wall's
    intersection number; the two agree for ample D."""
    D.require_ample()
    rep = EdgeReport()
    for w, x in D.wall_intersections:
        u1, u2 = D.local[w.sigma1], D.local[w.sigma2]
        length = lat.lattice_length(u1, u2)
        if length != x:
            raise AssertionError(f"edge length {length} != intersection number {x}")
        rep.rows.append(EdgeRow(w.sigma1, w.sigma2, u1, u2, w.tau, length, x))
    return rep


def s_at_vertex(P: Polytope, v: Sequence) -> Fraction:
    """Minimum lattice length of the edges of P through the vertex v."""
    i = P.vertex_index(v)
    return min(lat.lattice_length(P.vertices[i], P.vertices[j]) for _, j in edges_at_vertex(P, v))


def L_sigma(D: TCartierDivisor, i: int) -> Fraction:
    """Minimum lattice length of the edges of P_D at the vertex u_sigma."""
    D.require_ample()
    return s_at_vertex(D.polytope, D.local[i])


def max_concavity(D: TCartierDivisor) -> Fraction:
    """Largest k with psi_D k-concave, i.e. the minimum over ordered wall
    pairs of <u_1 - u_2, v0> / s0.  Negative when psi_D is not concave."""
    fan = D.fan
    if not fan.is_complete():
        raise DivisorError("fan is not complete")
    best = None
    for w in fan.walls:
        for ww in (w, w.flipped()):
            tau = [fan.rays[j] for j in ww.tau]
            v0 = fan.rays[ww.v0]
            gap = dot(sub(D.local[ww.sigma1], D.local[ww.sigma2]), v0)
            val = Fraction(gap, lat.s0(tau, v0))
            best = val if best is None else min(best, val)
    return best


def is_k_concave(D: TCartierDivisor, k) -> bool:
    return Fraction(k) <= max_concavity(D)


def seshadri_invariant_point(D: TCartierDivisor, i: int) -> int:
    """Seshadri constant at the fixed point of maximal cone i."""
    D.require_ample()
    s = s_at_vertex(D.polytope, D.local[i])
    assert s.denominator == 1
    return int(s)


def seshadri_global(D: TCartierDivisor) -> int:
    return min(seshadri_invariant_point(D, i) for i in range(len(D.fan.cones)))


def projection_monotonicity_check(P: Polytope, xi, tau) -> bool:
    """s(P'_xi; v'_xi) <= s(P''_tau; v''_tau) for faces xi < tau with
    dim tau = dim xi + 1."""
    xi, tau = frozenset(xi), frozenset(tau)
    if not P.is_face(xi) or not P.is_face(tau):
        raise DivisorError("not faces of the polytope")
    if not xi < tau or P.face_dim(tau) != P.face_dim(xi) + 1:
        raise DivisorError("need xi inside tau with dim tau = dim xi + 1")
    if P.face_dim(tau) >= P.dim:
        raise DivisorError("tau must be a proper face")
    P1, v1, _ = face_projection(P, xi)
    P2, v2, _ = face_projection(P, tau)
    return s_at_vertex(P1, v1) <= s_at_vertex(P2, v2)
