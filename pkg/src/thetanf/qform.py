"""Even integral quadratic forms: invariants, enumeration, theta series, isometry.

A form is stored by its even Gram matrix ``G`` and takes the value
``phi(x) = x^T G x / 2`` on integer vectors. Enumeration is exact
Fincke-Pohst on an LLL-reduced Gram matrix; no floats are involved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd, isqrt

from sympy import isprime

from . import linalg
from .errors import DimensionError, NotPositiveDefinite, SingularForm, UnsupportedRank


@dataclass(frozen=True)
class QuadraticForm:
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        if gram and not linalg.is_symmetric([list(r) for r in gram]):
            raise DimensionError("Gram matrix must be square and symmetric")
        if any(gram[i][i] % 2 for i in range(len(gram))):
            raise ValueError("Gram matrix must have an even diagonal")

    @classmethod
    def from_lattice(cls, lattice) -> "QuadraticForm":
        return cls(lattice.gram)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def matrix(self) -> list[list[int]]:
        return [list(r) for r in self.gram]

    def __call__(self, x) -> int:
        G = self.gram
        r = len(G)
        total = sum(G[i][j] * x[i] * x[j] for i in range(r) for j in range(r))
        return total // 2


@dataclass(frozen=True)
class FormInvariants:
    det: int
    disc: int
    level: int
    minimum: int
    character_disc: int


@dataclass(frozen=True)
class ThetaSeries:
    """Coefficients ``c_0..c_B`` of a theta series, ``c_t = #{x : phi(x) = t}``."""

    coeffs: tuple[int, ...]

    @property
    def precision(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, t):
        return self.coeffs[t]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, B: int) -> "ThetaSeries":
        if B > self.precision:
            raise ValueError(f"series only known to q^{self.precision}")
        return ThetaSeries(self.coeffs[:B + 1])

    def support(self) -> list[int]:
        return [t for t, c in enumerate(self.coeffs) if c]

    def format(self, below: int | None = None) -> str:
        """Render as ``1 + 2q^23 + 2q^27 + O(q^30)``; ``below`` defaults to ``B + 1``."""
        below = self.precision + 1 if below is None else below
        parts = []
        for t, c in enumerate(self.coeffs[:below]):
            if not c:
                continue
            if t == 0:
                parts.append(str(c))
                continue
            mono = "q" if t == 1 else f"q^{t}"
            parts.append(mono if c == 1 else f"{c}{mono}")
        parts.append(f"O(q^{below})")
        return " + ".join(parts)

    def __str__(self):
        return self.format()


def form_disc(F: QuadraticForm) -> int:
    r = F.rank
    return (-1) ** (r * (r - 1) // 2) * linalg.det_bareiss(F.matrix())


def level(F: QuadraticForm) -> int:
    """Least ``N > 0`` with ``N * G^{-1}`` integral with even diagonal."""
    G = F.matrix()
    if F.rank == 0:
        return 1
    d = abs(linalg.det_bareiss(G))
    if d == 0:
        raise SingularForm("level of a singular form")
    adj = linalg.adjugate(G)
    N = 1
    for i, row in enumerate(adj):
        for j, a in enumerate(row):
            need = 2 * d // gcd(2 * d, a) if i == j else d // gcd(d, a)
            N = N * need // gcd(N, need)
    return N


def character_disc(F: QuadraticForm) -> int:
    """The integer whose quadratic character accompanies the theta series of ``F``."""
    r = F.rank
    det = linalg.det_bareiss(F.matrix())
    if r % 4 == 0:
        return det
    if r % 4 == 2:
        return -det
    return det // 2


def is_positive_definite(F: QuadraticForm) -> bool:
    try:
        linalg.ldl(F.matrix())
    except NotPositiveDefinite:
        return False
    return True


def _interval(c: Fraction, s: Fraction) -> tuple[int, int]:
    """Integers ``x`` with ``(x - c)^2 <= s``, as an inclusive range."""
    a = floor(c)
    if (a - c) ** 2 > s and (a + 1 - c) ** 2 > s:
        return 0, -1
    r = isqrt(s.numerator // s.denominator)
    hi = a + r + 1
    while (hi - c) ** 2 > s:
        hi -= 1
    lo = a - r
    while (lo - c) ** 2 > s:
        lo += 1
    return lo, hi


def _enumerate(G, bound: int):
    """Yield ``(x, phi(x))`` for all nonzero ``x`` with ``phi(x) <= bound``, in G's coordinates."""
    r = len(G)
    L, D = linalg.ldl(G)
    budget = Fraction(2 * bound)
    x = [0] * r

    def rec(i, remaining):
        c = -sum((L[j][i] * x[j] for j in range(i + 1, r)), Fraction(0))
        lo, hi = _interval(c, remaining / D[i])
        for v in range(lo, hi + 1):
            x[i] = v
            left = remaining - D[i] * (v - c) ** 2
            if i == 0:
                total = budget - left
                if total:
                    yield tuple(x), int(total) // 2
            else:
                yield from rec(i - 1, left)
        x[i] = 0

    if r:
        yield from rec(r - 1, budget)


def short_vectors(F: QuadraticForm, bound: int, delta=Fraction(3, 4)):
    """All nonzero ``(x, phi(x))`` with ``phi(x) <= bound``.

    The search runs on an LLL-reduced basis and maps the vectors back to
    the coordinates of ``F``.
    """
    Gr, U = linalg.lll_gram(F.matrix(), delta)
    for y, val in _enumerate(Gr, bound):
        yield tuple(sum(U[i][j] * y[j] for j in range(len(y))) for i in range(len(y))), val


def representation_counts(F: QuadraticForm, B: int, delta=Fraction(3, 4)) -> list[int]:
    """``counts[t] = #{x : phi(x) = t}`` for ``1 <= t <= B``; ``counts[0]`` is left at 0."""
    counts = [0] * (B + 1)
    if F.rank == 0:
        return counts
    Gr, _ = linalg.lll_gram(F.matrix(), delta)
    for _, val in _enumerate(Gr, B):
        counts[val] += 1
    return counts


def theta_series(F: QuadraticForm, B: int, delta=Fraction(3, 4)) -> ThetaSeries:
    counts = representation_counts(F, B, delta)
    counts[0] = 1
    return ThetaSeries(tuple(counts))


def minimum(F: QuadraticForm) -> int:
    if F.rank == 0:
        raise DimensionError("minimum of a rank-0 form")
    Gr, _ = linalg.lll_gram(F.matrix())
    bound = max(min(Gr[i][i] for i in range(len(Gr))) // 2, 1)
    while True:
        values = [val for _, val in _enumerate(Gr, bound)]
        if values:
            return min(values)
        bound *= 2


def smallest_represented_prime(T: ThetaSeries) -> int | None:
    return next((t for t in range(2, T.precision + 1) if T[t] and isprime(t)), None)


def invariants(F: QuadraticForm) -> FormInvariants:
    return FormInvariants(
        det=linalg.det_bareiss(F.matrix()),
        disc=form_disc(F),
        level=level(F),
        minimum=minimum(F),
        character_disc=character_disc(F),
    )


MAX_ISOMETRY_RANK = 4


def isometry(F1: QuadraticForm, F2: QuadraticForm):
    """Find unimodular ``U`` with ``U^T G1 U == G2``, or return None.

    Exhaustive backtracking: the columns of a witness for the LLL-reduced
    target are vectors of F1 with prescribed values, and pairwise inner
    products prune the search.
    """
    r = F1.rank
    if max(r, F2.rank) > MAX_ISOMETRY_RANK:
        raise UnsupportedRank(f"isometry search supports rank <= {MAX_ISOMETRY_RANK}")
    if r != F2.rank:
        return None
    if r == 0:
        return []
    G1, G2 = F1.matrix(), F2.matrix()
    if linalg.det_bareiss(G1) != linalg.det_bareiss(G2):
        return None
    H, V = linalg.lll_gram(G2)
    targets = [H[j][j] // 2 for j in range(r)]
    by_value: dict[int, list[tuple[int, ...]]] = {}
    for v, val in short_vectors(F1, max(targets)):
        by_value.setdefault(val, []).append(v)
    cands = [by_value.get(t, []) for t in targets]
    if any(not c for c in cands):
        return None

    def inner(u, w):
        return sum(u[i] * G1[i][k] * w[k] for i in range(r) for k in range(r))

    chosen: list[tuple[int, ...]] = []

    def search(j):
        if j == r:
            return True
        for w in cands[j]:
            if all(inner(chosen[i], w) == H[i][j] for i in range(j)):
                chosen.append(w)
                if search(j + 1):
                    return True
                chosen.pop()
        return False

    if not search(0):
        return None
    W = linalg.transpose([list(w) for w in chosen])
    if abs(linalg.det_bareiss(W)) != 1:
        return None
    Vinv = [[int(x) for x in row] for row in linalg.inverse_rat(V)]
    U = linalg.matmul(W, Vinv)
    assert linalg.congruent(G1, U) == G2
    return U
