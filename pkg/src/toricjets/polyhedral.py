"""Cones, lattice polytopes, face lattices, normal fans and lattice points.

Dual descriptions come from a small integer double-description routine
(:func:`dd_rays`).  Support functions use the minimum convention: the
maximal cone of the normal fan at a vertex ``u`` is the set of ``v`` with
``<u, v> = min_{p in P} <p, v>``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import ceil, floor
from typing import Iterable, Sequence

from . import lattice as lat
from .lattice import dot, primitive, sub


class PolyhedralError(ValueError):
    pass


# --------------------------------------------------------------------------
# double description


def _as_int_rows(A: Sequence[Sequence]) -> list[tuple[int, ...]]:
    out = []
    for row in A:
        dirn = [Fraction(x) for x in row]
        if any(dirn):
            out.append(lat.integral_direction(dirn))
        else:
            out.append(tuple(0 for _ in row))
    return out


def dd_rays(A: Sequence[Sequence], dim: int | None = None) -> list[tuple[tuple[int, ...], frozenset]]:
    """Extreme rays of the pointed cone {y : A y >= 0}.

    Requires ``rank(A) == dim``.  Each ray is a primitive integer vector,
    returned together with the set of row indices of ``A`` vanishing on it.
    """
    rows = _as_int_rows(A)
    d = dim if dim is not None else len(rows[0])
    basis: list[int] = []
    for i, r in enumerate(rows):
        if lat.rational_rank([list(rows[j]) for j in basis] + [list(r)]) > len(basis):
            basis.append(i)
            if len(basis) == d:
                break
    if len(basis) < d:
        raise PolyhedralError("constraint system does not define a pointed cone")
    Binv = lat.inverse([list(rows[i]) for i in basis])
    rays: list[tuple[tuple[int, ...], frozenset]] = []
    for j in range(d):
        col = [Binv[i][j] for i in range(d)]
        r = lat.integral_direction(col)
        zero = frozenset(basis[i] for i in range(d) if i != j)
        rays.append((r, zero))
    done = set(basis)
    for idx, a in enumerate(rows):
        if idx in done:
            continue
        vals = [dot(a, r) for r, _ in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        new = [rays[k] for k in pos] + [(rays[k][0], rays[k][1] | {idx}) for k in zer]
        for p in pos:
            for q in neg:
                common = rays[p][1] & rays[q][1]
                if len(common) < d - 2:
                    continue
                if any(
                    k != p and k != q and common <= rays[k][1] for k in range(len(rays))
                ):
                    continue
                vp, vq = vals[p], vals[q]
                comb = tuple(vp * x - vq * y for x, y in zip(rays[q][0], rays[p][0]))
                new.append((primitive(comb), common | {idx}))
        rays = new
        done.add(idx)
    return rays


# --------------------------------------------------------------------------
# cones


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone generated by integer vectors."""

    generators: tuple[tuple[int, ...], ...]

    def __init__(self, generators: Iterable[Sequence[int]]):
        gens = tuple(tuple(int(x) for x in g) for g in generators)
        if not gens:
            raise PolyhedralError("a cone needs at least one generator")
        object.__setattr__(self, "generators", gens)

    @property
    def ambient_dim(self) -> int:
        return len(self.generators[0])

    @cached_property
    def dim(self) -> int:
        return lat.rank([list(g) for g in self.generators])

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    @cached_property
    def _facet_data(self):
        if not self.is_full_dimensional:
            raise PolyhedralError("facet description needs a full-dimensional cone")
        return dd_rays(self.generators, self.ambient_dim)

    @cached_property
    def facets(self) -> tuple[tuple[int, ...], ...]:
        """Primitive inner facet normals, sorted."""
        return tuple(sorted(f for f, _ in self._facet_data))

    @cached_property
    def is_pointed(self) -> bool:
        # pointed iff the dual is full-dimensional
        if not self.is_full_dimensional:
            return _no_line(self.generators)
        return lat.rank([list(f) for f in self.facets]) == self.ambient_dim

    @cached_property
    def rays(self) -> tuple[tuple[int, ...], ...]:
        """Primitive generators of the extreme rays (in first-seen order)."""
        prims = []
        for g in self.generators:
            if any(g):
                p = primitive(g)
                if p not in prims:
                    prims.append(p)
        if not self.is_full_dimensional:
            if not _no_line(self.generators):
                raise PolyhedralError("cone is not pointed")
            return tuple(p for p in prims if _is_extreme_lowdim(p, prims))
        if not self.is_pointed:
            raise PolyhedralError("cone is not pointed")
        facets = [f for f, _ in self._facet_data]
        out = []
        for p in prims:
            tight = [list(f) for f in facets if dot(f, p) == 0]
            if (lat.rank(tight) if tight else 0) == self.ambient_dim - 1:
                out.append(p)
        return tuple(out)

    @property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    @cached_property
    def multiplicity(self) -> int:
        return lat.multiplicity(self.rays)

    @property
    def is_smooth(self) -> bool:
        return self.is_simplicial and self.multiplicity == 1

    def contains(self, u: Sequence) -> bool:
        if self.is_full_dimensional:
            return all(dot(f, u) >= 0 for f in self.facets)
        return _in_cone_lp(self.rays, u)

    def contains_interior(self, u: Sequence) -> bool:
        return self.is_full_dimensional and all(dot(f, u) > 0 for f in self.facets)

    def same_as(self, other: "Cone") -> bool:
        return set(self.rays) == set(other.rays)


def _no_line(gens) -> bool:
    # a cone contains a line iff some nonzero nonnegative combination vanishes
    from .lp import maximize

    n = len(gens)
    d = len(gens[0])
    A = [[g[i] for g in gens] for i in range(d)]
    res = maximize([1] * n, A, [0] * d, [[1] * n], [1])
    return res.value == 0


def _in_cone_lp(gens, u) -> bool:
    from .lp import feasible

    d = len(u)
    A = [[g[i] for g in gens] for i in range(d)]
    return feasible(A, list(u), n=len(gens))


def _is_extreme_lowdim(p, prims) -> bool:
    others = [q for q in prims if q != p]
    return not others or not _in_cone_lp(others, p)


def dual_cone(C: Cone) -> Cone:
    """Dual cone {u : <u, v> >= 0 for v in C}, by its primitive rays."""
    if not C.is_full_dimensional:
        raise PolyhedralError("dual of a lower-dimensional cone is not pointed")
    return Cone(C.facets)


# --------------------------------------------------------------------------
# polytopes


def _frac_vec(p) -> tuple:
    return tuple(Fraction(x) for x in p)


def _normalize_point(p) -> tuple:
    return tuple(int(x) if Fraction(x).denominator == 1 else Fraction(x) for x in p)


@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]   # primitive inner normal a
    offset: Fraction          # facet is {x : <a, x> = offset}, polytope <a, x> >= offset


class Polytope:
    """Full-dimensional polytope with exact vertex and facet descriptions.

    Built from any finite point set; redundant points are discarded.  Face
    lattice data is computed once at construction.
    """

    def __init__(self, points: Iterable[Sequence]):
        pts = []
        for p in points:
            q = _normalize_point(p)
            if q not in pts:
                pts.append(q)
        if not pts:
            raise PolyhedralError("empty polytope")
        self.ambient_dim = len(pts[0])
        d = self.ambient_dim
        if d == 0:
            self.vertices = ((),)
            self.facets = ()
            self._incidence = (frozenset(),)
            self._init_faces()
            return
        homog = [[1] + list(p) for p in pts]
        if lat.rational_rank(homog) != d + 1:
            raise PolyhedralError("not full-dimensional")
        raw = dd_rays(homog, d + 1)
        facets = []
        for ray, _ in raw:
            b, a = ray[0], ray[1:]
            g = lat.content(a)
            facets.append(Facet(tuple(x // g for x in a), Fraction(-b, g)))
        facets.sort(key=lambda f: (f.normal, f.offset))
        self.facets = tuple(facets)
        verts = []
        for p in pts:
            tight = [list(f.normal) for f in facets if dot(f.normal, p) == f.offset]
            if tight and lat.rank(tight) == d:
                verts.append(p)
        self.vertices = tuple(verts)
        self._incidence = tuple(
            frozenset(j for j, f in enumerate(facets) if dot(f.normal, v) == f.offset)
            for v in verts
        )
        self._init_faces()

    # -- structure ---------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.ambient_dim

    @property
    def is_lattice(self) -> bool:
        return all(isinstance(x, int) for v in self.vertices for x in v)

    def vertex_index(self, u: Sequence) -> int:
        u = _normalize_point(u)
        try:
            return self.vertices.index(u)
        except ValueError:
            raise PolyhedralError(f"{u} is not a vertex") from None

    def facets_of(self, vertex_ids: Iterable[int]) -> frozenset:
        ids = list(vertex_ids)
        if not ids:
            return frozenset(range(len(self.facets)))
        out = self._incidence[ids[0]]
        for i in ids[1:]:
            out = out & self._incidence[i]
        return out

    def closure(self, vertex_ids: Iterable[int]) -> frozenset:
        """Vertex set of the smallest face containing the given vertices."""
        fs = self.facets_of(vertex_ids)
        return frozenset(i for i, inc in enumerate(self._incidence) if fs <= inc)

    def face_dim(self, face: frozenset) -> int:
        vs = [self.vertices[i] for i in sorted(face)]
        if not vs:
            return -1
        return lat.rational_rank([sub(v, vs[0]) for v in vs[1:]]) if len(vs) > 1 else 0

    def _init_faces(self) -> None:
        allv = frozenset(range(len(self.vertices)))
        faces = {allv}
        queue = []
        for j in range(len(self.facets)):
            f = frozenset(i for i, inc in enumerate(self._incidence) if j in inc)
            if f not in faces:
                faces.add(f)
                queue.append(f)
        while queue:
            f = queue.pop()
            for j in range(len(self.facets)):
                g = frozenset(i for i in f if j in self._incidence[i])
                if g and g not in faces:
                    faces.add(g)
                    queue.append(g)
        for i in range(len(self.vertices)):
            faces.add(frozenset([i]))
        by_dim: dict[int, list[frozenset]] = {}
        for f in faces:
            by_dim.setdefault(self.face_dim(f), []).append(f)
        self.faces = {k: sorted(v, key=sorted) for k, v in sorted(by_dim.items())}

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [tuple(sorted(f)) for f in self.faces.get(1, [])]

    def is_face(self, face: frozenset) -> bool:
        return frozenset(face) in self.faces.get(self.face_dim(frozenset(face)), [])

    def contains(self, x: Sequence) -> bool:
        if self.ambient_dim == 0:
            return True
        return all(dot(f.normal, x) >= f.offset for f in self.facets)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polytope) and set(self.vertices) == set(other.vertices)

    def __hash__(self):
        return hash(frozenset(self.vertices))

    def __repr__(self) -> str:
        return f"Polytope({list(self.vertices)})"

    def dilate(self, m) -> "Polytope":
        return Polytope([tuple(m * x for x in v) for v in self.vertices])

    def translate(self, w: Sequence) -> "Polytope":
        return Polytope([lat.add(v, w) for v in self.vertices])

    def linear_image(self, U: lat.Matrix) -> "Polytope":
        return Polytope([lat.matvec(U, v) for v in self.vertices])


def cone_at_vertex(P: Polytope, u: Sequence) -> Cone:
    """cone(P - u), generated by the edge directions at ``u``."""
    i = P.vertex_index(u)
    gens = [lat.integral_direction(sub(P.vertices[j], P.vertices[i])) for _, j in edges_at_vertex(P, u)]
    return Cone(gens)


def edges_at_vertex(P: Polytope, u: Sequence) -> list[tuple[tuple[int, int], int]]:
    """Edges ``(i, j)`` of P through vertex ``u`` with the opposite endpoint."""
    i = P.vertex_index(u)
    out = []
    for e in P.edges:
        if i in e:
            out.append((e, e[1] if e[0] == i else e[0]))
    return out


def lattice_points(P: Polytope) -> list[tuple[int, ...]]:
    """P cap Z^d, by nested coordinate bounds on successive projections."""
    d = P.ambient_dim
    if d == 0:
        return [()]
    projections = []
    for k in range(1, d + 1):
        if k == d:
            projections.append(P.facets)
        else:
            proj = Polytope([v[:k] for v in P.vertices])
            projections.append(proj.facets)
    out = []

    def rec(prefix: list[int]) -> None:
        k = len(prefix)
        lo, hi = None, None
        for f in projections[k]:
            a = f.normal
            rest = f.offset - sum(a[i] * prefix[i] for i in range(k))
            c = a[k]
            if c > 0:
                b = ceil(Fraction(rest, 1) / c)
                lo = b if lo is None else max(lo, b)
            elif c < 0:
                b = floor(Fraction(rest, 1) / c)
                hi = b if hi is None else min(hi, b)
            elif rest > 0:
                return
        for x in range(lo, hi + 1):
            prefix.append(x)
            if k + 1 == d:
                out.append(tuple(prefix))
            else:
                rec(prefix)
            prefix.pop()

    rec([])
    return out


def face_projection(P: Polytope, face: Iterable[int]):
    """Project P along the directions of a face onto the quotient lattice.

    Returns ``(P', v', F)`` where ``F`` is the integer matrix of the
    quotient map, ``P' = F(P)`` and ``v' = F(face)``.
    """
    face = frozenset(face)
    if not face or not P.is_face(face):
        raise PolyhedralError("not a face of the polytope")
    ids = sorted(face)
    base = P.vertices[ids[0]]
    dirs = [lat.integral_direction(sub(P.vertices[i], base)) for i in ids[1:]]
    F = lat.quotient_lattice_map(dirs, P.ambient_dim)
    image = Polytope([lat.matvec(F, v) for v in P.vertices])
    return image, lat.matvec(F, base), F


# --------------------------------------------------------------------------
# fans


@dataclass(frozen=True)
class Wall:
    """Codimension-one cone shared by two maximal cones.

    ``v0`` is a ray of ``sigma2`` outside ``sigma1``; ``v0_opposite`` is a
    ray of ``sigma1`` outside ``sigma2``.
    """

    sigma1: int
    sigma2: int
    tau: tuple[int, ...]
    v0: int
    v0_opposite: int

    def flipped(self) -> "Wall":
        return Wall(self.sigma2, self.sigma1, self.tau, self.v0_opposite, self.v0)


@dataclass
class Fan:
    """Fan by primitive rays and maximal cones (tuples of ray indices)."""

    rays: tuple[tuple[int, ...], ...]
    cones: tuple[tuple[int, ...], ...]
    walls: tuple[Wall, ...] = field(default=None)

    def __post_init__(self):
        self.rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        for r in self.rays:
            if lat.content(r) != 1:
                raise PolyhedralError(f"ray {r} is not primitive")
        if not self.rays or len({len(r) for r in self.rays}) != 1:
            raise PolyhedralError("rays must be nonempty and of one dimension")
        self.cones = tuple(tuple(sorted(int(j) for j in c)) for c in self.cones)
        for c in self.cones:
            if not c or len(set(c)) != len(c) or not all(0 <= j < len(self.rays) for j in c):
                raise PolyhedralError(f"cone {c} has bad ray indices")
        if self.walls is None:
            self.walls = tuple(_compute_walls(self))

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    def cone(self, i: int) -> Cone:
        return Cone([self.rays[j] for j in self.cones[i]])

    @cached_property
    def _cone_cache(self):
        return [self.cone(i) for i in range(len(self.cones))]

    def cone_obj(self, i: int) -> Cone:
        return self._cone_cache[i]

    def walls_of(self, i: int) -> list[Wall]:
        """Walls with ``sigma1 == i`` (each wall oriented away from i)."""
        out = []
        for w in self.walls:
            if w.sigma1 == i:
                out.append(w)
            elif w.sigma2 == i:
                out.append(w.flipped())
        return out

    @property
    def all_top_dimensional(self) -> bool:
        return all(self.cone_obj(i).is_full_dimensional for i in range(len(self.cones)))

    def is_complete(self) -> bool:
        """Every facet of every maximal cone is a wall shared with exactly one other."""
        if not self.all_top_dimensional:
            return False
        for i in range(len(self.cones)):
            taus = [w.tau for w in self.walls_of(i)]
            if len(set(taus)) != len(taus) or len(taus) != len(self.cone_obj(i).facets):
                return False
        return True

    def locate(self, v: Sequence) -> int:
        """Index of a maximal cone containing ``v``."""
        for i in range(len(self.cones)):
            if self.cone_obj(i).contains(v):
                return i
        raise PolyhedralError(f"{tuple(v)} is outside the support of the fan")


def _compute_walls(fan: Fan) -> list[Wall]:
    n = len(fan.rays[0])
    walls = []
    for i, j in itertools.combinations(range(len(fan.cones)), 2):
        common = sorted(set(fan.cones[i]) & set(fan.cones[j]))
        if len(common) < n - 1:
            continue
        if lat.rank([list(fan.rays[k]) for k in common]) != n - 1:
            continue
        ok = True
        for a in (i, j):
            C = Cone([fan.rays[k] for k in fan.cones[a]])
            if not C.is_full_dimensional:
                ok = False
                break
            # common rays must span a facet of each cone
            if not any(all(dot(f, fan.rays[k]) == 0 for k in common) for f in C.facets):
                ok = False
                break
        if not ok:
            continue
        v0 = next(k for k in fan.cones[j] if k not in common)
        v0o = next(k for k in fan.cones[i] if k not in common)
        walls.append(Wall(i, j, tuple(common), v0, v0o))
    return walls


def normal_fan(P: Polytope) -> tuple[Fan, dict[int, int]]:
    """Normal fan of a full-dimensional polytope and the vertex -> cone map.

    Rays are the primitive inner facet normals; the maximal cone of vertex
    ``i`` is spanned by the normals of the facets through it.  Walls come
    from the edges of P.
    """
    if P.ambient_dim == 0:
        raise PolyhedralError("not full-dimensional")
    rays = tuple(f.normal for f in P.facets)
    cones = tuple(tuple(sorted(P._incidence[i])) for i in range(len(P.vertices)))
    walls = []
    for a, b in P.edges:
        common = tuple(sorted(P._incidence[a] & P._incidence[b]))
        v0 = min(P._incidence[b] - P._incidence[a])
        v0o = min(P._incidence[a] - P._incidence[b])
        walls.append(Wall(a, b, common, v0, v0o))
    fan = Fan(rays, cones, tuple(walls))
    return fan, {i: i for i in range(len(P.vertices))}
