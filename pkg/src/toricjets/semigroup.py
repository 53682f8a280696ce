"""The affine semigroup Q cap M of a pointed full-dimensional cone Q.

Weight functions, lattice points of the half-open fundamental
parallelepiped, the ideal-power order ``k_u`` of a monomial and the
singularity constant ``Gamma_Q``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb, lcm
from typing import Iterable, Sequence

import numpy as np

from . import lattice as lat
from .lattice import dot
from .lp import maximize, minimize
from .polyhedral import Cone, Polytope, lattice_points

KuMemo = dict
_MAX_BASES = 400


class SemigroupError(ValueError):
    pass


@dataclass(frozen=True)
class _Ineq:
    """``alpha . u + beta . z + gamma >= 0`` (``> 0`` when strict)."""

    alpha: tuple
    beta: tuple
    gamma: Fraction
    strict: bool


def _fm_eliminate(ineqs: list[_Ineq], nz: int, limit: int = 20000) -> list[_Ineq] | None:
    for j in range(nz):
        pos = [q for q in ineqs if q.beta[j] > 0]
        neg = [q for q in ineqs if q.beta[j] < 0]
        out = {q for q in ineqs if q.beta[j] == 0}
        for p in pos:
            for q in neg:
                a, b = p.beta[j], -q.beta[j]
                alpha = tuple(b * x + a * y for x, y in zip(p.alpha, q.alpha))
                beta = tuple(b * x + a * y for x, y in zip(p.beta, q.beta))
                gamma = b * p.gamma + a * q.gamma
                scale = _norm_scale(alpha + beta + (gamma,))
                if scale:
                    alpha = tuple(x / scale for x in alpha)
                    beta = tuple(x / scale for x in beta)
                    gamma = gamma / scale
                out.add(_Ineq(alpha, beta, gamma, p.strict or q.strict))
        ineqs = list(out)
        if len(ineqs) > limit:
            return None
    return ineqs


def _norm_scale(xs) -> Fraction:
    nz = [abs(Fraction(x)) for x in xs if x]
    return min(nz) if nz else Fraction(0)


class DualConeData:
    """A pointed full-dimensional cone Q in M with its ray generators.

    ``grading`` is the sum of the primitive rays of the dual of Q, so it is
    strictly positive on Q minus the origin.
    """

    def __init__(self, cone: Cone | Iterable[Sequence[int]]):
        Q = cone if isinstance(cone, Cone) else Cone(cone)
        if not Q.is_full_dimensional:
            raise SemigroupError("Q must be full-dimensional")
        if not Q.is_pointed:
            raise SemigroupError("Q must be pointed")
        self.cone = Q
        self.rays = Q.rays
        self.dim = Q.ambient_dim
        self.facets = Q.facets
        grading = [0] * self.dim
        for f in self.facets:
            grading = [a + b for a, b in zip(grading, f)]
        self.grading = tuple(grading)
        assert all(dot(w, self.grading) > 0 for w in self.rays)

    def __repr__(self) -> str:
        return f"DualConeData(rays={list(self.rays)})"

    def contains(self, u: Sequence[int]) -> bool:
        return all(dot(f, u) >= 0 for f in self.facets)

    def degree(self, u: Sequence[int]) -> int:
        return dot(self.grading, u)

    @property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    @property
    def is_smooth(self) -> bool:
        return self.cone.is_smooth

    # -- linear algebra helpers ------------------------------------------

    @cached_property
    def _basis_solve(self):
        """(J, T, K): a ray basis J, a right inverse T and a kernel basis K.

        Every representation ``u = sum a_i w_i`` is ``a = T u + K z``.
        """
        m, n = len(self.rays), self.dim
        J: list[int] = []
        for i in range(m):
            if lat.rational_rank([list(self.rays[j]) for j in J + [i]]) > len(J):
                J.append(i)
        WJ = [list(self.rays[j]) for j in J]  # rows w_j
        inv = lat.inverse(lat.transpose(WJ))  # solves W_J^T a_J = u
        T = [[Fraction(0)] * n for _ in range(m)]
        for r, j in enumerate(J):
            T[j] = list(inv[r])
        K = lat.integer_kernel(lat.transpose([list(w) for w in self.rays]), m)
        K = lat.transpose(K) if K else [[] for _ in range(m)]
        return J, T, K

    @cached_property
    def _half_open_box(self) -> list[_Ineq] | None:
        J, T, K = self._basis_solve
        m = len(self.rays)
        nz = len(K[0]) if K and K[0] else 0
        ineqs = []
        for i in range(m):
            alpha = tuple(T[i])
            beta = tuple(Fraction(x) for x in K[i]) if nz else ()
            ineqs.append(_Ineq(alpha, beta, Fraction(0), False))
            ineqs.append(_Ineq(tuple(-x for x in alpha), tuple(-x for x in beta), Fraction(1), True))
        return _fm_eliminate(ineqs, nz)

    def in_half_open_box(self, u: Sequence[int]) -> bool:
        """u = sum a_i w_i for some 0 <= a_i < 1."""
        ineqs = self._half_open_box
        if ineqs is not None:
            for q in ineqs:
                v = dot(q.alpha, u) + q.gamma
                if v < 0 or (q.strict and v == 0):
                    return False
            return True
        return _box_lp(self, u)

    # -- weights -----------------------------------------------------------

    @cached_property
    def _bases(self):
        """(adj, d) per ray basis B with d |det W_B| > 0 and adj u = d T_B u.

        The weight LPs are optimised at basic solutions, so enumerating the
        bases is exact; None when there are too many of them.
        """
        m, n = len(self.rays), self.dim
        if comb(m, n) > _MAX_BASES:
            return None
        out = []
        for B in itertools.combinations(range(m), n):
            WB = [list(self.rays[j]) for j in B]
            det = lat.determinant(WB)
            if det == 0:
                continue
            d = abs(int(det))
            inv = lat.inverse(lat.transpose(WB))
            out.append(([tuple(int(x * d) for x in row) for row in inv], d))
        return out

    def _weight(self, u, sense) -> Fraction:
        u = tuple(u)
        if not self.contains(u):
            raise SemigroupError(f"{u} is outside cone")
        if not any(u):
            return Fraction(0)
        if self.is_simplicial:
            _, T, _ = self._basis_solve
            return sum((dot(row, u) for row in T), Fraction(0))
        bases = self._bases
        if bases is not None:
            vals = []
            for adj, d in bases:
                a = [dot(row, u) for row in adj]
                if all(x >= 0 for x in a):
                    vals.append(Fraction(sum(a), d))
            return max(vals) if sense is maximize else min(vals)
        A = [[w[i] for w in self.rays] for i in range(self.dim)]
        res = sense([1] * len(self.rays), A, list(u))
        if not res.ok:
            raise SemigroupError(f"weight LP failed for {u}: {res.status}")
        return res.value

    @cached_property
    def box_points(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(_box_points(self), key=lambda u: (self.degree(u), u)))

    @cached_property
    def generators(self) -> tuple[tuple[int, ...], ...]:
        gens = list(self.rays)
        seen = set(gens)
        for u in self.box_points:
            if any(u) and u not in seen:
                gens.append(u)
                seen.add(u)
        return tuple(gens)

    @cached_property
    def hilbert_basis(self) -> tuple[tuple[int, ...], ...]:
        """Irreducible generators: g with no other generator h, g - h in Q.

        Scanned by degree; a reducing h always splits off an irreducible
        summand of smaller degree, so testing against those is enough.
        """
        gens = sorted(self.generators, key=lambda g: (self.degree(g), g))
        keep: list[tuple] = []
        F = np.zeros((0, len(self.facets)), dtype=np.int64)
        for g in gens:
            fg = np.array([dot(f, g) for f in self.facets], dtype=np.int64)
            if not (F <= fg).all(axis=1).any():
                keep.append(g)
                F = np.vstack([F, fg])
        return tuple(keep)

    @cached_property
    def _hilbert_facet_values(self):
        # maximal decompositions only use irreducible summands
        rows = [[dot(f, g) for f in self.facets] for g in self.hilbert_basis]
        return np.array(rows, dtype=np.int64).reshape(len(rows), len(self.facets))

    @cached_property
    def gamma(self) -> Fraction:
        if self.is_simplicial:
            return max(w - k for w, k in _box_heights(self).values())
        memo: KuMemo = {}
        best = Fraction(0)
        for u in self.box_points:
            best = max(best, self.w_max(u) - k_u(self, u, memo))
        return best

    def w_max(self, u) -> Fraction:
        return self._weight(u, maximize)

    def w_min(self, u) -> Fraction:
        return self._weight(u, minimize)


def _box_lp(Q: DualConeData, u) -> bool:
    # max t  s.t.  sum a_i w_i = u,  a_i + t <= 1,  a, t >= 0
    m = len(Q.rays)
    A = [[w[i] for w in Q.rays] + [0] for i in range(Q.dim)]
    ub = [[int(j == i) for j in range(m)] + [1] for i in range(m)]
    res = maximize([0] * m + [1], A, list(u), ub, [1] * m)
    return res.ok and res.value > 0


def _simplicial_box(Q: DualConeData) -> tuple[int, list[tuple], list[tuple]]:
    """(d, points, scaled coefficients) for a simplicial Q.

    A box point p = sum c_j w_j / d with integers 0 <= c_j < d, where
    d = |det W|; representatives of M / (sum Z w_j) come from the HNF diagonal.
    """
    W = [list(w) for w in Q.rays]
    n = Q.dim
    H, _ = lat.hermite_normal_form(W)
    diag = [H[i][i] for i in range(n)]
    Winv = lat.inverse(W)
    d = abs(int(lat.determinant(W)))
    A = [[int(Winv[i][j] * d) for j in range(n)] for i in range(n)]
    reps = [()]
    for h in diag:
        reps = [r + (x,) for r in reps for x in range(h)]
    pts, coeffs = [], []
    for x in reps:
        c = tuple(sum(x[i] * A[i][j] for i in range(n)) % d for j in range(n))
        pts.append(tuple(sum(c[j] * W[j][i] for j in range(n)) // d for i in range(n)))
        coeffs.append(c)
    return d, pts, coeffs


def _box_heights(Q: DualConeData) -> dict[tuple, tuple[Fraction, int]]:
    """Box point -> (w_max, k_u) for a simplicial Q.

    Summands of a box point have coefficients in [0, 1) again, so k_u is the
    height of u in the coefficientwise order on the box.
    """
    d, pts, coeffs = _simplicial_box(Q)
    C = np.array(coeffs, dtype=np.int64).reshape(len(pts), Q.dim)
    S = C.sum(axis=1)
    order = np.argsort(S, kind="stable")
    height = np.zeros(len(pts), dtype=np.int64)
    done = np.zeros(len(pts), dtype=bool)
    for i in order:
        below = done & (S < S[i]) & (C <= C[i]).all(axis=1)
        height[i] = height[below].max() + 1 if below.any() else 0
        done[i] = True
    return {p: (Fraction(int(S[i]), d), int(height[i])) for i, p in enumerate(pts)}


def _box_points(Q: DualConeData) -> list[tuple[int, ...]]:
    if Q.is_simplicial:
        return _simplicial_box(Q)[1]
    # closed zonotope sum [0,1] w_i, then the half-open filter
    corners = [tuple(0 for _ in range(Q.dim))]
    for w in Q.rays:
        corners = corners + [lat.add(c, w) for c in corners]
    pts = lattice_points(Polytope(corners))
    ineqs = Q._half_open_box
    if ineqs is None:
        return [u for u in pts if _box_lp(Q, u)]
    # integer rows: scaling by a positive denominator keeps sign and strictness
    rows, consts = [], []
    for q in ineqs:
        L = lcm(*(Fraction(x).denominator for x in q.alpha + (q.gamma,)))
        rows.append([int(x * L) for x in q.alpha])
        consts.append(int(q.gamma * L))
    V = np.array(pts, dtype=np.int64) @ np.array(rows, dtype=np.int64).T + np.array(consts, dtype=np.int64)
    strict = np.array([q.strict for q in ineqs])
    ok = ((V > 0) | ((V == 0) & ~strict)).all(axis=1)
    return [u for u, keep in zip(pts, ok) if keep]


# --------------------------------------------------------------------------
# public operations


def w_max(Q: DualConeData, u: Sequence[int]) -> Fraction:
    """max sum a_i over u = sum a_i w_i, a_i >= 0."""
    return Q.w_max(u)


def w_min(Q: DualConeData, u: Sequence[int]) -> Fraction:
    """min sum a_i over u = sum a_i w_i, a_i >= 0."""
    return Q.w_min(u)


def box_points(Q: DualConeData) -> tuple[tuple[int, ...], ...]:
    """Lattice points of {sum a_i w_i : 0 <= a_i < 1}; always contains 0."""
    return Q.box_points


def generators(Q: DualConeData) -> tuple[tuple[int, ...], ...]:
    """Rays together with the nonzero box points: generators of m_Q."""
    return Q.generators


def k_u(Q: DualConeData, u: Sequence[int], memo: KuMemo | None = None) -> int:
    """Largest k with chi^u in m_Q^k.

    Dynamic programme over subtractions of Hilbert basis elements, run on
    facet values (a bijective image of M for full-dimensional Q); each step
    lowers the grading degree so the recursion is well founded.
    """
    u = tuple(u)
    if not Q.contains(u):
        raise SemigroupError(f"{u} is outside cone")
    if memo is None:
        memo = {}
    F = Q._hilbert_facet_values
    start = tuple(dot(f, u) for f in Q.facets)
    stack = [start]
    while stack:
        x = stack[-1]
        if x in memo:
            stack.pop()
            continue
        if not any(x):
            memo[x] = 0
            stack.pop()
            continue
        pending = False
        best = 0
        xa = np.array(x, dtype=np.int64)
        for y in map(tuple, (xa - F[(F <= xa).all(axis=1)]).tolist()):
            ky = memo.get(y)
            if ky is None:
                stack.append(y)
                pending = True
            elif not pending:
                best = max(best, ky + 1)
        if not pending:
            memo[x] = best
            stack.pop()
    return memo[start]


def gamma_q(Q: DualConeData) -> Fraction:
    """max over box points u of w_max(u) - k_u."""
    return Q.gamma


def gamma_x(fan) -> Fraction:
    """Maximum of gamma_q over the duals of the maximal cones of a fan."""
    return max(gamma_table(fan).values())


def gamma_table(fan) -> dict[int, Fraction]:
    if not fan.all_top_dimensional:
        raise SemigroupError("a maximal cone is not top-dimensional")
    out = {}
    for i in range(len(fan.cones)):
        out[i] = DualConeData(fan.cone_obj(i).facets).gamma
    return out


def dual_data(fan, i: int) -> DualConeData:
    return DualConeData(fan.cone_obj(i).facets)


def graded_region(Q: DualConeData, cutoff) -> list[tuple[int, ...]]:
    """Lattice points e of Q with <e, grading> <= cutoff."""
    cutoff = Fraction(cutoff)
    if cutoff < 0:
        return []
    if cutoff == 0:
        return [tuple(0 for _ in range(Q.dim))]
    verts = [tuple(0 for _ in range(Q.dim))]
    for w in Q.rays:
        s = cutoff / Q.degree(w)
        verts.append(tuple(s * x for x in w))
    return lattice_points(Polytope(verts))


def quotient_basis_exponents(Q: DualConeData, k: int, memo: KuMemo | None = None) -> list[tuple[int, ...]]:
    """Exponents e in Q cap M with k_e < k: the monomial basis of R / m_Q^k.

    Any e with w_max(e) > k - 1 + Gamma_Q already lies in m_Q^k, so only the
    region cut out by that weight bound needs to be searched.
    """
    if k < 1:
        raise SemigroupError("k must be positive")
    if memo is None:
        memo = {}
    bound = k - 1 + Q.gamma
    cutoff = bound * max(Q.degree(w) for w in Q.rays)
    region = sorted(graded_region(Q, cutoff), key=lambda e: (Q.degree(e), e))
    return [e for e in region if k_u(Q, e, memo) < k]
