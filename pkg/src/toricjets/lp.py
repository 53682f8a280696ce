"""Exact rational linear programming: two-phase tableau simplex, Bland's rule."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    x: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.status == OPTIMAL


def _pivot(T: list[list[Fraction]], r: int, c: int) -> None:
    row = T[r]
    inv = 1 / row[c]
    if inv != 1:
        T[r] = row = [v * inv for v in row]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f:
                T[i] = [a - f * b for a, b in zip(other, row)]


def _simplex(T, basis, ncols) -> bool:
    """Maximise the objective stored (negated) in the last row of ``T``.

    Columns ``>= ncols`` (other than the rhs) are never entered.  Returns
    False when the problem is unbounded.
    """
    m = len(T) - 1
    obj = T[m]
    while True:
        obj = T[m]
        c = next((j for j in range(ncols) if obj[j] < 0), None)
        if c is None:
            return True
        best = None
        for i in range(m):
            a = T[i][c]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        r = best[1]
        _pivot(T, r, c)
        basis[r] = c


def maximize(
    c: Sequence,
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
) -> LPResult:
    """max c.x subject to A_eq x = b_eq, A_ub x <= b_ub, x >= 0 (exact)."""
    n = len(c)
    rows = [[Fraction(v) for v in row] + [Fraction(0)] * len(A_ub) for row in A_eq]
    rhs = [Fraction(v) for v in b_eq]
    for k, row in enumerate(A_ub):
        slack = [Fraction(0)] * len(A_ub)
        slack[k] = Fraction(1)
        rows.append([Fraction(v) for v in row] + slack)
        rhs.append(Fraction(b_ub[k]))
    nv = n + len(A_ub)
    m = len(rows)
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    # phase 1 with artificials nv .. nv+m-1
    T = []
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append(rows[i] + art + [rhs[i]])
    obj = [Fraction(0)] * (nv + m + 1)
    for i in range(m):
        obj = [a - b for a, b in zip(obj, T[i])]
    for i in range(m):
        obj[nv + i] = Fraction(0)
    T.append(obj)
    basis = [nv + i for i in range(m)]
    _simplex(T, basis, nv)
    if T[m][-1] != 0:
        return LPResult(INFEASIBLE)
    # drive artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(basis):
        if basis[i] >= nv:
            c_in = next((j for j in range(nv) if T[i][j] != 0), None)
            if c_in is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, i, c_in)
            basis[i] = c_in
        i += 1
    m = len(basis)
    T = [row[:nv] + [row[-1]] for row in T[:m]]
    cost = [Fraction(v) for v in c] + [Fraction(0)] * len(A_ub)
    obj = [-v for v in cost] + [Fraction(0)]
    for i, b in enumerate(basis):
        if obj[b]:
            f = obj[b]
            obj = [a - f * r for a, r in zip(obj, T[i])]
    T.append(obj)
    if not _simplex(T, basis, nv):
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * nv
    for i, b in enumerate(basis):
        x[b] = T[i][-1]
    return LPResult(OPTIMAL, T[m][-1], tuple(x[:n]))


def minimize(c, A_eq=(), b_eq=(), A_ub=(), b_ub=()) -> LPResult:
    res = maximize([-Fraction(v) for v in c], A_eq, b_eq, A_ub, b_ub)
    if res.ok:
        return LPResult(OPTIMAL, -res.value, res.x)
    return res


def feasible(A_eq=(), b_eq=(), A_ub=(), b_ub=(), n: int | None = None) -> bool:
    if n is None:
        n = len(A_eq[0]) if A_eq else len(A_ub[0])
    return maximize([0] * n, A_eq, b_eq, A_ub, b_ub).ok
