"""Exact integer and rational linear algebra on Z^d and Q^d.

Vectors are plain tuples of ``int`` or ``Fraction``; matrices are lists of
row lists.  Nothing in here touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

Vector = tuple
Matrix = list


class LatticeError(ValueError):
    pass


def vec(xs) -> tuple:
    return tuple(xs)


def add(u, v) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u) -> tuple:
    return tuple(c * a for a in u)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def is_zero(u) -> bool:
    return all(a == 0 for a in u)


def content(v: Sequence[int]) -> int:
    return reduce(gcd, (abs(int(a)) for a in v), 0)


def primitive(v: Sequence[int]) -> tuple:
    """Divide an integer vector by the gcd of its coordinates."""
    g = content(v)
    if g == 0:
        raise LatticeError("not primitive-able: zero vector")
    return tuple(int(a) // g for a in v)


def integral_direction(v: Sequence) -> tuple:
    """Primitive integer vector pointing along a nonzero rational vector."""
    den = reduce(lcm, (Fraction(a).denominator for a in v), 1)
    return primitive([int(Fraction(a) * den) for a in v])


def lattice_length(u1: Sequence, u2: Sequence) -> Fraction:
    """The rational l >= 0 with u1 - u2 = l * w for a primitive w in Z^d."""
    if len(u1) != len(u2):
        raise LatticeError(f"dimension mismatch: {len(u1)} vs {len(u2)}")
    d = [Fraction(a) - Fraction(b) for a, b in zip(u1, u2)]
    den = reduce(lcm, (x.denominator for x in d), 1)
    return Fraction(content([int(x * den) for x in d]), den)


# --------------------------------------------------------------------------
# matrices


def shape(A: Matrix) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    return [[dot(row, col) for col in Bt] for row in A]


def matvec(A: Matrix, v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in A)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_normal_form(A: Matrix) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``H == U @ A``.  ``H`` is in
    row echelon form with positive pivots, entries above each pivot reduced
    into ``[0, pivot)``, and zero rows at the bottom.
    """
    m, n = len(A), (len(A[0]) if A else 0)
    H = [[int(x) for x in row] for row in A]
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            if H[i][c] == 0:
                continue
            a, b = H[r][c], H[i][c]
            g, x, y = _xgcd(a, b)
            p, q = a // g, b // g
            # [[x, y], [-q, p]] has determinant 1
            H[r], H[i] = (
                [x * s + y * t for s, t in zip(H[r], H[i])],
                [-q * s + p * t for s, t in zip(H[r], H[i])],
            )
            U[r], U[i] = (
                [x * s + y * t for s, t in zip(U[r], U[i])],
                [-q * s + p * t for s, t in zip(U[r], U[i])],
            )
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        piv = H[r][c]
        for i in range(r):
            f = H[i][c] // piv
            if f:
                H[i] = [s - f * t for s, t in zip(H[i], H[r])]
                U[i] = [s - f * t for s, t in zip(U[i], U[r])]
        r += 1
    return H, U


def smith_invariant_factors(A: Matrix) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    M = [[int(x) for x in row] for row in A]
    m, n = shape(M)
    out = []
    t = 0
    while t < min(m, n):
        nz = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        M[t], M[pi] = M[pi], M[t]
        for row in M:
            row[t], row[pj] = row[pj], row[t]
        while True:
            changed = False
            for i in range(t + 1, m):
                if M[i][t]:
                    q = M[i][t] // M[t][t]
                    M[i] = [a - q * b for a, b in zip(M[i], M[t])]
                    if M[i][t]:
                        M[t], M[i] = M[i], M[t]
                        changed = True
            for j in range(t + 1, n):
                if M[t][j]:
                    q = M[t][j] // M[t][t]
                    for row in M:
                        row[j] -= q * row[t]
                    if M[t][j]:
                        for row in M:
                            row[t], row[j] = row[j], row[t]
                        changed = True
            if changed:
                continue
            # pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % M[t][t]),
                None,
            )
            if bad is None:
                break
            M[t] = [a + b for a, b in zip(M[t], M[bad[0]])]
        out.append(abs(M[t][t]))
        t += 1
    return out


def rank(A: Matrix) -> int:
    if not A:
        return 0
    H, _ = hermite_normal_form(A)
    return sum(1 for row in H if any(row))


def rational_rank(A: Matrix) -> int:
    return len(row_reduce([[Fraction(x) for x in row] for row in A])[1])


def row_reduce(A: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q; returns (R, pivot columns)."""
    R = [[Fraction(x) for x in row] for row in A]
    m, n = shape(R)
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def determinant(A: Matrix) -> Fraction:
    n = len(A)
    R = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if R[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            R[c], R[p] = R[p], R[c]
            det = -det
        det *= R[c][c]
        for i in range(c + 1, n):
            f = R[i][c] / R[c][c]
            if f:
                R[i] = [a - f * b for a, b in zip(R[i], R[c])]
    return det


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    R, piv = row_reduce(aug)
    if piv[:n] != list(range(n)):
        raise LatticeError("singular matrix")
    return [row[n:] for row in R]


def solve(A: Matrix, b: Sequence) -> tuple | None:
    """Some rational solution x of A x = b, or None when inconsistent."""
    m, n = shape(A)
    aug = [list(row) + [b[i]] for i, row in enumerate(A)]
    R, piv = row_reduce(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for r, c in enumerate(piv):
        x[c] = R[r][n]
    return tuple(x)


def integer_kernel(A: Matrix, ncols: int | None = None) -> Matrix:
    """Basis (rows, HNF-canonical) of {x in Z^n : A x = 0}; saturated."""
    n = ncols if ncols is not None else len(A[0])
    if not A:
        return identity(n)
    H, U = hermite_normal_form(transpose(A))
    K = [U[i] for i in range(n) if not any(H[i])]
    if not K:
        return []
    Hk, _ = hermite_normal_form(K)
    return [row for row in Hk if any(row)]


def saturation_basis(gens: Sequence[Sequence[int]], d: int) -> Matrix:
    """Basis of span_R(gens) cap Z^d."""
    if not gens:
        return []
    ann = integer_kernel([list(g) for g in gens], d)
    if not ann:
        return identity(d)
    return integer_kernel(ann, d)


def multiplicity(gens: Sequence[Sequence[int]]) -> int:
    """Index of the lattice spanned by ``gens`` in its saturation.

    The index is the product of the nonzero invariant factors of the
    generator matrix.  An empty generator list has multiplicity 1.
    """
    if not gens:
        return 1
    prod = 1
    for f in smith_invariant_factors([list(g) for g in gens]):
        prod *= f
    return prod


def s0(tau_gens: Sequence[Sequence[int]], v0: Sequence[int]) -> int:
    """Index of the image of v0 in N / N_tau, as mult(tau, v0) / mult(tau)."""
    tau = [list(g) for g in tau_gens]
    if rank(tau + [list(v0)]) == rank(tau):
        raise LatticeError("not transverse: v0 lies in span(tau)")
    num = multiplicity(tau + [list(v0)])
    den = multiplicity(tau)
    assert num % den == 0
    return num // den


def quotient_lattice_map(sub_gens: Sequence[Sequence[int]], ambient_dim: int) -> Matrix:
    """Integer matrix of the projection Z^d -> Z^d / sat(span(sub_gens)).

    The rows form the HNF basis of the annihilator lattice, so the map is
    surjective onto Z^(d - rank) and its kernel is exactly the saturation.
    """
    gens = [list(g) for g in sub_gens if any(g)]
    if not gens:
        return identity(ambient_dim)
    return integer_kernel(gens, ambient_dim)


def is_unimodular(U: Matrix) -> bool:
    return len(U) == len(U[0]) and abs(determinant(U)) == 1
