"""Exact integer and rational linear algebra.

Matrices are plain lists of rows. Integer matrices hold Python ints and
rational ones hold :class:`fractions.Fraction`; nothing here ever touches a
float. Inputs are never mutated.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor, gcd

from .errors import DimensionError, NotPositiveDefinite

IntMatrix = list[list[int]]
RatMatrix = list[list[Fraction]]


def shape(M):
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if any(len(row) != cols for row in M):
        raise DimensionError("ragged matrix")
    return rows, cols


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M):
    return [list(col) for col in zip(*M)]


def matmul(A, B):
    if A and B and len(A[0]) != len(B):
        raise DimensionError(f"cannot multiply {len(A)}x{len(A[0])} by {len(B)}x{len(B[0])}")
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def congruent(G, U):
    """Return ``U^T G U``."""
    return matmul(transpose(U), matmul(G, U))


def is_symmetric(M) -> bool:
    n, m = shape(M)
    return n == m and all(M[i][j] == M[j][i] for i in range(n) for j in range(i))


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def det_bareiss(M: IntMatrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n, m = shape(M)
    if n != m:
        raise DimensionError(f"determinant of non-square {n}x{m} matrix")
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (akk * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1]


def rank_exact(M: IntMatrix) -> int:
    """Rank over the rationals, by fraction-free elimination."""
    if not M:
        return 0
    rows, cols = shape(M)
    A = [list(row) for row in M]
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        arc = A[r][c]
        for i in range(r + 1, rows):
            aic = A[i][c]
            for j in range(c + 1, cols):
                A[i][j] = (arc * A[i][j] - aic * A[r][j]) // prev
            A[i][c] = 0
        prev = arc
        r += 1
    return r


def hnf_with_transform(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H == U @ M`` and ``U`` unimodular. Pivots of
    ``H`` are positive, entries above each pivot lie in ``[0, pivot)``, and
    zero rows sit at the bottom.
    """
    rows, cols = shape(M)
    H = [list(row) for row in M]
    U = identity(rows)

    def combine(r, i, a, b, c, d):
        # (row_r, row_i) <- (a*row_r + b*row_i, c*row_r + d*row_i)
        for X in (H, U):
            xr, xi = X[r], X[i]
            X[r] = [a * p + b * q for p, q in zip(xr, xi)]
            X[i] = [c * p + d * q for p, q in zip(xr, xi)]

    r = 0
    for c in range(cols):
        if r == rows:
            break
        for i in range(r + 1, rows):
            if H[i][c] != 0:
                a, b = H[r][c], H[i][c]
                g, s, t = xgcd(a, b)
                combine(r, i, s, t, -b // g, a // g)
        piv = H[r][c]
        if piv == 0:
            continue
        if piv < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
            piv = -piv
        for i in range(r):
            q = H[i][c] // piv
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U


def kernel_saturated(M: IntMatrix) -> IntMatrix:
    """Basis (as rows) of the integer kernel ``{x : M x = 0}``.

    The basis comes from the unimodular transform of an HNF of ``M^T``, so
    the kernel lattice it spans is saturated in ``Z^n``.
    """
    _, n = shape(M)
    H, U = hnf_with_transform(transpose(M))
    return [U[i] for i in range(n) if not any(H[i])]


def ldl(G: IntMatrix) -> tuple[RatMatrix, list[Fraction]]:
    """Exact ``G = L diag(D) L^T`` with ``L`` unit lower triangular.

    Raises :class:`NotPositiveDefinite` at the first non-positive pivot.
    """
    n, m = shape(G)
    if n != m:
        raise DimensionError("LDL of a non-square matrix")
    if not is_symmetric(G):
        raise ValueError("LDL needs a symmetric matrix")
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D: list[Fraction] = []
    for i in range(n):
        Li = L[i]
        for j in range(i):
            Lj = L[j]
            s = Fraction(G[i][j])
            for k in range(j):
                s -= Li[k] * Lj[k] * D[k]
            Li[j] = s / D[j]
        d = Fraction(G[i][i])
        for k in range(i):
            d -= Li[k] * Li[k] * D[k]
        if d <= 0:
            raise NotPositiveDefinite(i + 1)
        D.append(d)
    return L, D


def _round(x: Fraction) -> int:
    return floor(x + Fraction(1, 2))


def lll_gram(G: IntMatrix, delta: Fraction = Fraction(3, 4)) -> tuple[IntMatrix, IntMatrix]:
    """LLL-reduce a positive definite Gram matrix.

    Works on the Gram matrix alone with exact rational Gram-Schmidt data.
    Returns ``(G_red, U)`` where ``G_red == U^T G U``; column ``i`` of ``U``
    gives the ``i``-th reduced basis vector in the original coordinates.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta <= 1:
        raise ValueError("delta must lie in (1/4, 1]")
    n, _ = shape(G)
    G = [list(row) for row in G]
    U = identity(n)
    if n <= 1:
        ldl(G)
        return G, U
    mu, B = ldl(G)

    def sub(k, j, q):
        # b_k <- b_k - q b_j
        G[k] = [x - q * y for x, y in zip(G[k], G[j])]
        for row in G:
            row[k] -= q * row[j]
        for row in U:
            row[k] -= q * row[j]

    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = _round(mu[k][j])
            if q:
                sub(k, j, q)
                mu[k][j] -= q
                for l in range(j):
                    mu[k][l] -= q * mu[j][l]
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            k += 1
            continue
        G[k], G[k - 1] = G[k - 1], G[k]
        for row in G:
            row[k], row[k - 1] = row[k - 1], row[k]
        for row in U:
            row[k], row[k - 1] = row[k - 1], row[k]
        mu, B = ldl(G)
        k = max(k - 1, 1)
    return G, U


def content(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def adjugate(M: IntMatrix) -> IntMatrix:
    """Classical adjoint, so that ``M @ adj(M) == det(M) * I``."""
    n, m = shape(M)
    if n != m:
        raise DimensionError("adjugate of a non-square matrix")
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]
            adj[j][i] = (-1) ** (i + j) * det_bareiss(minor)
    return adj


def inverse_rat(M) -> RatMatrix:
    """Inverse over the rationals by Gauss-Jordan; raises ZeroDivisionError if singular."""
    n, m = shape(M)
    if n != m:
        raise DimensionError("inverse of a non-square matrix")
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]
